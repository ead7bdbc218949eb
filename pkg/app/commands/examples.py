"""
Example Configurations
Predefined scenarios reproducing the published accuracy studies
"""

DISTANCES_M = [0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0]
ENERGIES_AJ = [0.01, 0.1, 1.0, 10.0, 100.0]


def _spectrum_case(order: int, fc_thz: float) -> dict:
    return {
        "scenario": {"distance_m": 0.5},
        "pulse": {"order": order, "fc_thz": fc_thz, "energy_aj": 0.01},
        "sweep": {"runs": 1},
    }


def _distance_case(energy_aj: float, fc_thz: float) -> dict:
    return {
        "pulse": {"fc_thz": fc_thz, "energy_aj": energy_aj},
        "sweep": {
            "axis": "distance_m",
            "values": DISTANCES_M,
            "secondary_axis": "order",
            "secondary_values": [1, 6],
        },
    }


def _energy_case(fc_thz: float) -> dict:
    return {
        "scenario": {"distance_m": 0.1},
        "pulse": {"fc_thz": fc_thz},
        "sweep": {
            "axis": "energy_aj",
            "values": ENERGIES_AJ,
            "secondary_axis": "order",
            "secondary_values": [1, 6],
        },
    }


def get_examples():
    """
    Get all example scenario configurations

    Returns:
        Dictionary of name -> {name, description, config}; each config only
        lists the keys that differ from the defaults
    """
    examples = {
        "distance_single_snapshot": {
            "name": "RMSE versus Distance, Single Snapshot",
            "description": "First order, 6 THz, 1 aJ, K = 1 over 0.01..6 m",
            "config": {
                "estimator": {"snapshots": 1},
                "sweep": {"axis": "distance_m", "values": [0.01, 0.1, 1.0, 3.0, 5.0, 6.0]},
            },
        },
        "spectrum_first_order_2thz": {
            "name": "IMUSIC Spectrum, First Order at 2 THz",
            "description": "0.01 aJ from 0.5 m (run `spectrum`)",
            "config": _spectrum_case(1, 2.0),
        },
        "spectrum_first_order_6thz": {
            "name": "IMUSIC Spectrum, First Order at 6 THz",
            "description": "0.01 aJ from 0.5 m (run `spectrum`)",
            "config": _spectrum_case(1, 6.0),
        },
        "spectrum_first_order_4thz": {
            "name": "IMUSIC Spectrum, First Order at 4 THz",
            "description": "0.01 aJ from 0.5 m (run `spectrum`)",
            "config": _spectrum_case(1, 4.0),
        },
        "spectrum_sixth_order_4thz": {
            "name": "IMUSIC Spectrum, Sixth Order at 4 THz",
            "description": "0.01 aJ from 0.5 m (run `spectrum`)",
            "config": _spectrum_case(6, 4.0),
        },
        "order_frequency_map": {
            "name": "RMSE over Order and Center Frequency",
            "description": "n = 1..6 by fc = 2..6 THz at 0.01 aJ from 0.5 m",
            "config": {
                "scenario": {"distance_m": 0.5},
                "pulse": {"energy_aj": 0.01},
                "sweep": {
                    "axis": "order",
                    "values": [1, 2, 3, 4, 5, 6],
                    "secondary_axis": "fc_thz",
                    "secondary_values": [2.0, 3.0, 4.0, 5.0, 6.0],
                },
            },
        },
        "distance_6thz_100aj": {
            "name": "RMSE versus Distance, 6 THz, 100 aJ",
            "description": "First and sixth order",
            "config": _distance_case(100.0, 6.0),
        },
        "distance_6thz_001aj": {
            "name": "RMSE versus Distance, 6 THz, 0.01 aJ",
            "description": "First and sixth order",
            "config": _distance_case(0.01, 6.0),
        },
        "distance_2thz_100aj": {
            "name": "RMSE versus Distance, 2 THz, 100 aJ",
            "description": "First and sixth order",
            "config": _distance_case(100.0, 2.0),
        },
        "distance_2thz_001aj": {
            "name": "RMSE versus Distance, 2 THz, 0.01 aJ",
            "description": "First and sixth order",
            "config": _distance_case(0.01, 2.0),
        },
        "energy_2thz": {
            "name": "RMSE versus Pulse Energy, 2 THz",
            "description": "First and sixth order from 0.1 m",
            "config": _energy_case(2.0),
        },
        "energy_6thz": {
            "name": "RMSE versus Pulse Energy, 6 THz",
            "description": "First and sixth order from 0.1 m",
            "config": _energy_case(6.0),
        },
        "snapshot_count": {
            "name": "RMSE versus Frequency Snapshots",
            "description": "First order, 6 THz, 1 aJ from 1 m",
            "config": {
                "sweep": {"axis": "snapshots", "values": [1, 10, 25, 50, 75, 100]},
            },
        },
        "noiseless_oracle": {
            "name": "Noiseless Recovery",
            "description": "Vacuum, noise off, K = 1: estimates land exactly on the true angle",
            "config": {
                "medium": {"profile": "vacuum"},
                "noise": {"enabled": False},
                "estimator": {"snapshots": 1},
                "sweep": {"axis": "doa_deg", "values": [-45.5, -10.0, 0.0, 10.25, 33.33, 60.0], "runs": 1},
            },
        },
    }

    return examples
