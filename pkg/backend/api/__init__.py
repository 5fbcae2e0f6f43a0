"""FastAPI Web Interface for the Robin Exterior Toolkit"""
