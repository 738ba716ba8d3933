#!/usr/bin/env python3
"""
Config Validator CLI Tool

Usage:
    python validate_config.py <config_file>
    python validate_config.py configs/*.yaml

Runs the same checks as `python main.py validate`: the document schema, every
referenced spectrum and mixture file, and grid coverage. Glob patterns are
expanded here for shells that do not do it themselves.
"""
import glob
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from mmwave_lab.cli import EXIT_CONFIG, cmd_validate, configure_logging


def expand_patterns(args):
    config_files = []
    for arg in args:
        if "*" in arg or "?" in arg:
            config_files.extend(sorted(glob.glob(arg)))
        else:
            config_files.append(arg)
    return config_files


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        print("Usage: python validate_config.py <config_file> [config_file2 ...]")
        return EXIT_CONFIG

    config_files = expand_patterns(argv)
    if not config_files:
        print("[ERROR] No config files found")
        return EXIT_CONFIG

    configure_logging()
    status = cmd_validate(config_files)
    print(f"\nChecked {len(config_files)} config file(s)")
    return status


if __name__ == "__main__":
    sys.exit(main())
