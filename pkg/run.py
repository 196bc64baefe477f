"""
heisvc entry point

    python run.py classify 2 0 1
    python run.py verify-all --bound 3 --json
"""
import os

from flask.cli import FlaskGroup

from app import create_app

# Get configuration from environment or use default
config_name = os.getenv('HEISVC_ENV', 'development')


def make_app():
    return create_app(config_name)


cli = FlaskGroup(
    name='heisvc',
    create_app=make_app,
    add_default_commands=False,
    add_version_option=False,
    load_dotenv=True,
    help='Verification tool for the Heisenberg group universal space.',
)

if __name__ == '__main__':
    cli()
