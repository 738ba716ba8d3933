import sys
from pathlib import Path

import yaml


def generate_minimal_config():
    """Simulation defaults: 3x3 half-wavelength arrays, 50 m apart, broadside, 20 dB."""

    config = {
        "description": "Capacity over the 50-200 GHz band, constant SNR",
        "experiment": {
            "variable": "frequency",
            "grid": {"start": 50e9, "stop": 200e9, "step": 0.5e9},
            "atmosphere": {"preset": "USA model, mean latitude, summer"},
            "geometry": {
                "n": 3,
                "spacing_wavelengths": 0.5,
                "phi_deg": 90.0,
                "theta_deg": 90.0,
                "distance_m": 50.0,
            },
            "budget": {"mode": "constant_snr", "snr_db": 20.0},
            "angles": "fixed",
        },
        "data_paths": [f"data/synthetic/{species.lower()}.csv" for species in
                       ["H2O", "CO2", "O3", "N2O", "CO", "CH4", "O2", "N2"]],
        "output_path": "results/my_experiment.csv",
        "output_format": "csv",
        "seed": 0,
        "trials": 5000,
    }

    return config


def save_config(config, filename=None):
    if not filename:
        filename = "my_experiment.yaml"

    script_dir = Path(__file__).parent
    output_path = script_dir / "configs" / filename
    output_path.parent.mkdir(parents=True, exist_ok=True)

    stem = Path(filename).stem
    config["output_path"] = f"results/{stem}.csv"

    with open(output_path, "w") as f:
        yaml.dump(
            config, f, default_flow_style=False, sort_keys=False, allow_unicode=True
        )

    print(f"\nConfiguration saved to: {output_path}")
    print(f"\nEdit the file to customize:")
    print(f"   - Pick the sweep variable and grid")
    print(f"   - Choose an atmosphere (k_per_m, preset or mixture)")
    print(f"   - Switch the budget to constant_power for raw path loss")
    print(f"\nCheck it, then run the sweep:")
    print(f"   python validate_config.py {output_path}")
    print(f"   python main.py sweep {output_path}")
    return output_path


def main():
    try:
        print("\n=== mmWave Lab Config Generator ===\n")

        if len(sys.argv) > 1:
            filename = sys.argv[1].strip()
        else:
            filename = input("Enter filename (without .yaml extension): ").strip()
        if not filename:
            filename = "my_experiment"

        if not filename.endswith(".yaml"):
            filename = f"{filename}.yaml"

        print(f"\nCreating config: {filename}\n")

        config = generate_minimal_config()
        save_config(config, filename)

    except KeyboardInterrupt:
        print("\n\nCancelled.")
        sys.exit(1)
    except Exception as e:
        print(f"\nError: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
