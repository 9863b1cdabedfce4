# same version as in:
# - setup.py
__version__ = '0.1.0'
