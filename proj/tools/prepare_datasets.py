#!/usr/bin/env python3
"""Rebuild the bundled CSV datasets under data/.

wine.csv           UCI Wine (178 x 13, 3 classes), from scikit-learn's bundled copy.
breast_cancer.csv  UCI Breast Cancer Wisconsin, original (699 x 9, 2 classes), from the
                   MASS `biopsy` table shipped in the `pydataset` package. The sample-ID
                   column is dropped; the 16 missing "bare nuclei" cells are filled with
                   the column median.

Usage: prepare_datasets.py [--biopsy PATH_TO_biopsy.csv] [--out DIR]
"""
import argparse
import csv
import os
import statistics

import sklearn.datasets

WINE_COLUMNS = [
    "alcohol", "malic_acid", "ash", "alcalinity_of_ash", "magnesium", "total_phenols",
    "flavanoids", "nonflavanoid_phenols", "proanthocyanins", "color_intensity", "hue",
    "od280_od315", "proline",
]

BC_COLUMNS = [
    "clump_thickness", "cell_size_uniformity", "cell_shape_uniformity", "marginal_adhesion",
    "epithelial_cell_size", "bare_nuclei", "bland_chromatin", "normal_nucleoli", "mitoses",
]


def write_wine(out_dir):
    bunch = sklearn.datasets.load_wine()
    with open(os.path.join(out_dir, "wine.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(WINE_COLUMNS + ["class"])
        for row, label in zip(bunch.data, bunch.target):
            w.writerow([repr(float(v)) if float(v) != int(v) else str(int(v)) for v in row]
                       + [f"class_{label}"])


def write_breast_cancer(biopsy_path, out_dir):
    with open(biopsy_path, newline="") as f:
        rows = list(csv.reader(f))[1:]
    # columns: rownum, ID, V1..V9, class
    values = [[None if c == "NA" else int(c) for c in r[2:11]] for r in rows]
    labels = [r[11] for r in rows]
    for j in range(9):
        present = [v[j] for v in values if v[j] is not None]
        median = int(statistics.median(present))
        for v in values:
            if v[j] is None:
                v[j] = median
    with open(os.path.join(out_dir, "breast_cancer.csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(BC_COLUMNS + ["class"])
        for v, label in zip(values, labels):
            w.writerow(v + [label])


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    ap = argparse.ArgumentParser()
    ap.add_argument("--biopsy", default=None)
    ap.add_argument("--out", default=os.path.join(here, "..", "data"))
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    write_wine(args.out)
    if args.biopsy:
        write_breast_cancer(args.biopsy, args.out)


if __name__ == "__main__":
    main()
