#!/usr/bin/env python3
"""Fetch benchmark datasets into data/ as CSV files.

Only public sources are used; nothing is vendored in the repository.

mileage   Auto MPG (UCI). Taken from the `vega_datasets` wheel (cars.json),
          downloaded with pip. Criterion: Miles_per_Gallon. Cues: Cylinders,
          Displacement, Horsepower, Weight_in_lbs, Acceleration, Year.
          Rows with a missing value are kept as empty cells; the loader drops them.

city, homeless, profsalary
          Part of the heuristics benchmark collection distributed with the R
          package `heuristica` and the Czerlinski/Gigerenzer/Goldstein data
          sets. No stable public download is scripted here; export them to
          data/<name>.csv with the criterion in its own column, e.g. from R:
              write.csv(heuristica::city_population, "data/city.csv", row.names = FALSE)
          and pass the criterion column name to `pttb bench --dataset`.
"""

import argparse
import csv
import json
import pathlib
import subprocess
import sys
import tempfile
import zipfile

MILEAGE_CUES = ["Cylinders", "Displacement", "Horsepower", "Weight_in_lbs", "Acceleration", "Year"]


def load_cars_json() -> list:
    try:
        import vega_datasets  # noqa: F401

        path = pathlib.Path(vega_datasets.__file__).parent / "_data" / "cars.json"
        return json.loads(path.read_text())
    except ImportError:
        pass
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "--no-deps", "vega_datasets==0.9.0", "-d", tmp],
            check=True,
            stdout=subprocess.DEVNULL,
        )
        wheel = next(pathlib.Path(tmp).glob("vega_datasets-*.whl"))
        with zipfile.ZipFile(wheel) as z:
            return json.loads(z.read("vega_datasets/_data/cars.json"))


def write_mileage(out_dir: pathlib.Path) -> pathlib.Path:
    rows = load_cars_json()
    path = out_dir / "mileage.csv"
    with path.open("w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["Name", "Miles_per_Gallon"] + MILEAGE_CUES)
        for r in rows:
            year = r.get("Year")
            r = dict(r, Year=int(year[:4]) if isinstance(year, str) else year)
            w.writerow([r["Name"], r.get("Miles_per_Gallon")] + [r.get(c) for c in MILEAGE_CUES])
    return path


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"wrote {write_mileage(out)}")
    print("city, homeless, profsalary: see the module docstring for manual export")
    return 0


if __name__ == "__main__":
    sys.exit(main())
