"""
Spline DLO Simulator Core Module
"""
