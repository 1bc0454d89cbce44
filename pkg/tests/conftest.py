"""Pytest configuration; helpers live in helpers.py."""
