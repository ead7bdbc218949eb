"""
Models Package
Pulse, medium, channel, array and experiment domain types
"""

from app.models.array import SnapshotTensor, SourceScenario, UlaGeometry
from app.models.channel import ChannelParams
from app.models.experiment import ExperimentConfig, RmseReport, RunManifest
from app.models.medium import AbsorptionProfile, LorentzLine
from app.models.pulse import FrequencyGrid, PulseSpec, SymbolSequence

__all__ = [
    'AbsorptionProfile', 'ChannelParams', 'ExperimentConfig', 'FrequencyGrid', 'LorentzLine',
    'PulseSpec', 'RmseReport', 'RunManifest', 'SnapshotTensor', 'SourceScenario',
    'SymbolSequence', 'UlaGeometry',
]
