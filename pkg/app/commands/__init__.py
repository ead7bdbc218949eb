"""
Commands Package
Click command groups registered on the application as blueprints
"""

from app.commands.medium import medium_bp
from app.commands.simulate import simulate_bp

__all__ = ['medium_bp', 'simulate_bp']
