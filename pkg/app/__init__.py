"""
Command-line application
"""
