"""
Utilities Package
Snapshot synthesis, subspace estimation, simulation engine and helpers
"""

from app.utils.simulator import DoaSimulator, run_trial, sweep
from app.utils.validators import validate_config

__all__ = ['DoaSimulator', 'run_trial', 'sweep', 'validate_config']
