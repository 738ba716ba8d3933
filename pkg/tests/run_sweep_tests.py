#!/usr/bin/env python3
"""
Test runner for the sweep axis tests.

Runs everything under tests/sweeps; call it from the repository root.
"""
import sys
import unittest

# Discover and run all tests in the sweeps directory
loader = unittest.TestLoader()
suite = loader.discover("tests/sweeps", pattern="test_*.py", top_level_dir=".")

runner = unittest.TextTestRunner(verbosity=2)
result = runner.run(suite)

# Exit with appropriate code
sys.exit(0 if result.wasSuccessful() else 1)
