"""
THz DOA Simulator Entry Point
Command-line interface: simulate, spectrum, table1, examples, medium
"""

import os
import logging

import click
from flask.cli import FlaskGroup

from app import create_app
from app.config import config

# Configure logging
logging.basicConfig(
    level=os.environ.get('LOG_LEVEL', 'INFO'),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)


def build_app():
    """Create the application for the environment named by THZDOA_ENV"""
    env = os.environ.get('THZDOA_ENV', 'development')
    config_class = config.get(env, config['default'])
    app = create_app(config_class)
    logger.debug(f"Loaded {env} configuration, output dir {app.config['OUTPUT_DIR']}")
    return app


@click.group(cls=FlaskGroup, create_app=build_app, add_default_commands=False, add_version_option=False)
def cli():
    """Terahertz pulse DOA estimation simulator"""


def main():
    """Main application entry point"""
    cli()


if __name__ == '__main__':
    main()
