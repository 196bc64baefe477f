"""
Configuration settings for heisvc
"""
import os
from pathlib import Path

# Base directory
BASE_DIR = Path(__file__).parent.absolute()


def _env_flag(name, default='false'):
    return os.environ.get(name, default).lower() in ('1', 'true', 'yes')


class Config:
    """Base configuration"""
    TOOL_VERSION = '0.1.0'

    # Ball radii
    DEFAULT_BOUND = int(os.environ.get('HEISVC_BOUND', 3))
    MAX_VERIFY_BOUND = 6
    MAX_BF_BOUND = 8

    # Reports
    COUNTEREXAMPLE_LIMIT = 20

    # Randomized chain engine checks
    RANDOM_COMPLEX_COUNT = 100
    RANDOM_SEED = int(os.environ.get('HEISVC_SEED', 20240611))

    # Suites running concurrently in verify-all
    MAX_WORKERS = int(os.environ.get('HEISVC_WORKERS', 4))

    # Logging
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING')
    LOG_FILE = BASE_DIR / 'logs' / 'heisvc.log'
    LOG_TO_FILE = _env_flag('LOG_TO_FILE')


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    TESTING = False
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    TESTING = False


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    DEFAULT_BOUND = 2
    RANDOM_COMPLEX_COUNT = 30
    RANDOM_SEED = 7
    MAX_WORKERS = 2
    LOG_TO_FILE = False


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
