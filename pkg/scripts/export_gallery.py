#!/usr/bin/env python3
"""
Writes the gallery examples as instance files, so they can be edited and
re-checked with `disentangle check`. Action examples are skipped: their
models are written by hand (see instances/examples/flips_action.json).

Usage: python scripts/export_gallery.py [output_dir]
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from instances import schemas  # noqa: E402
from instances.instance_loader import instance_to_data  # noqa: E402
from modules.gallery import gallery  # noqa: E402


def export_gallery(output_dir):
    """
    Writes one JSON file per exportable gallery entry.

    Args:
        output_dir: Directory to write into (created if missing)

    Returns:
        List of written paths
    """
    os.makedirs(output_dir, exist_ok=True)
    written = []
    for entry in gallery():
        if entry.instance.category == schemas.ACTION:
            print(f"  [SKIP] {entry.name}: action instances are not exported")
            continue
        path = os.path.join(output_dir, f"{entry.name}.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump(instance_to_data(entry.instance), f, indent=2, ensure_ascii=False)
            f.write("\n")
        print(f"  [OK] {entry.name} -> {path}")
        written.append(path)
    return written


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else os.path.join("instances", "gallery")
    export_gallery(target)
