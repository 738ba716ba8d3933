#!/usr/bin/env python3
"""
mmWave MIMO capacity lab.

    python main.py sweep configs/absorption_sweep.yaml
    python main.py point --n 1 --k 0 --snr-db 20
    python main.py presets
"""
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from mmwave_lab.cli import main

if __name__ == "__main__":
    sys.exit(main())
