#!/usr/bin/env python3
"""
Write the seeded two-blob 2-D demo dataset as CSV.

Usage: python scripts/make_demo_data.py [out.csv] [seed]
"""

import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

# Import after path setup
from triagetree.services.dataset_loader import write_csv  # noqa: E402
from triagetree.services.synthetic import two_blobs  # noqa: E402


def main() -> int:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("two_blobs.csv")
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

    dataset = two_blobs(seed=seed)
    write_csv(dataset, out)

    print(f"✅ Wrote {dataset.n_rows} rows to {out}")
    print(f"   - classes: {dict(zip(dataset.class_names, dataset.class_counts().tolist()))}")
    print(f"   - try: python -m triagetree fit --data {out} --out model.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
