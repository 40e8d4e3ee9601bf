"""
Main entry point for the oracle discrimination toolkit when run as a module.
Allows execution with 'python -m oracledisc'
"""

from .cli import main

if __name__ == "__main__":
    main()
