"""
heisvc application factory
"""
import logging
import sys
from pathlib import Path

from flask import Flask


def create_app(config_name='default'):
    """
    Application factory pattern

    Args:
        config_name: Configuration name (development, production, testing)

    Returns:
        Flask application instance carrying the CLI commands
    """
    app = Flask(__name__)

    # Load configuration
    from config import config
    app.config.from_object(config[config_name])

    # Setup logging
    setup_logging(app)

    # Register commands
    from app.commands import verify_bp
    app.register_blueprint(verify_bp)

    app.logger.debug(f'heisvc {app.config["TOOL_VERSION"]} loaded ({config_name})')

    return app


def setup_logging(app):
    """Configure logging for the app package"""
    log_level = getattr(logging, app.config['LOG_LEVEL'].upper(), logging.INFO)
    package_logger = logging.getLogger('app')

    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
        handler.close()

    # File handler
    if app.config['LOG_TO_FILE']:
        Path(app.config['LOG_FILE']).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(app.config['LOG_FILE'])
        file_handler.setLevel(log_level)
        file_handler.setFormatter(logging.Formatter(
            '[%(asctime)s] %(levelname)s in %(module)s: %(message)s'
        ))
        package_logger.addHandler(file_handler)

    # Console handler on stderr so reports on stdout stay clean
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(
        '%(levelname)s: %(message)s'
    ))
    package_logger.addHandler(console_handler)
    package_logger.setLevel(log_level)
    package_logger.propagate = False
