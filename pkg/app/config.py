"""
Application Configuration
Centralized configuration management
"""

import os


class Config:
    """Base configuration"""

    # Flask Configuration
    DEBUG = os.environ.get('FLASK_DEBUG', 'False').lower() == 'true'

    # Output Configuration
    OUTPUT_DIR = os.environ.get('THZDOA_OUTPUT_DIR', 'results')

    # Simulation Configuration
    MAX_RUNS = 100000
    MAX_SWEEP_VALUES = 1000
    DEFAULT_WORKERS = int(os.environ.get('THZDOA_WORKERS', 1))

    # Scenario defaults: 8-element ULA at 15 μm, 1-10 THz observed for 10 ps
    # (91 bins), first-order 6 THz 1 aJ pulse from 1 m at 10.25°, K = 50
    EXPERIMENT_DEFAULTS = {
        'scenario': {'doa_deg': 10.25, 'distance_m': 1.0},
        'pulse': {'order': 1, 'fc_thz': 6.0, 'energy_aj': 1.0},
        'array': {'elements': 8, 'spacing_um': 15.0},
        'band': {'f_start_thz': 1.0, 'bandwidth_thz': 9.0, 'observation_ps': 10.0},
        'medium': {'profile': 'summer_air', 'path': None, 'k_per_m': 0.0},
        'noise': {
            'enabled': True,
            'self_noise': True,
            'background_mode': 'limit',
            'temperature_k': 296.0,
            'antenna_center_thz': None,
        },
        'estimator': {
            'snapshots': 50,
            'sources': 1,
            'angle_min_deg': -90.0,
            'angle_max_deg': 90.0,
            'angle_step_deg': 0.01,
            'refine': True,
        },
        'sweep': {'runs': 100, 'seed': 0, 'workers': DEFAULT_WORKERS},
    }

    # Logging
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING')


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    DEBUG = True
    OUTPUT_DIR = os.environ.get('THZDOA_OUTPUT_DIR', 'test-results')
    MAX_RUNS = 500


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
