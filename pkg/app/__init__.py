"""
THz DOA Simulator Application Factory
Creates and configures the Flask application and its command groups
"""

from flask import Flask

from app.config import Config

__version__ = '1.0.0'


def create_app(config_class=Config):
    """
    Application factory function

    Args:
        config_class: Configuration class to use

    Returns:
        Configured Flask application instance
    """
    app = Flask(__name__)

    # Load configuration
    app.config.from_object(config_class)
    app.logger.setLevel(app.config['LOG_LEVEL'])

    # Register command blueprints
    from app.commands import medium_bp, simulate_bp

    app.register_blueprint(simulate_bp)
    app.register_blueprint(medium_bp)

    return app
