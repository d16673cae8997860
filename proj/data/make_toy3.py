#!/usr/bin/env python3
"""Writes toy3.csv: 300 rows, 4 features, 3 Gaussian classes (labels 0-2)."""
import csv
import random
from pathlib import Path

CENTERS = [(0.0, 0.0, 0.0, 0.0), (3.0, 0.0, 3.0, 0.0), (0.0, 3.0, 0.0, 3.0)]

rng = random.Random(20240601)
rows = []
for label, center in enumerate(CENTERS):
    for _ in range(100):
        rows.append([f"{rng.gauss(c, 1.0):.6f}" for c in center] + [label])
rng.shuffle(rows)

with open(Path(__file__).with_name("toy3.csv"), "w", newline="") as f:
    csv.writer(f, lineterminator="\n").writerows(rows)
