#!/usr/bin/env python3
"""Download the benchmark datasets that are not bundled with the repo.

Requires network access. Files land in data/ (or --dest):

  abalone.data              UCI Abalone (headerless CSV)
  hcvdat0.csv               UCI HCV data (liver disorders)
  train-images-idx3-ubyte   MNIST, plus the other three IDX files

iris.csv ships with the repo already.
"""

import argparse
import gzip
import io
import os
import sys
import urllib.request
import zipfile

UCI = "https://archive.ics.uci.edu/static/public"
MNIST_MIRRORS = [
    "https://storage.googleapis.com/cvdf-datasets/mnist",
    "https://ossci-datasets.s3.amazonaws.com/mnist",
]
MNIST_FILES = [
    "train-images-idx3-ubyte",
    "train-labels-idx1-ubyte",
    "t10k-images-idx3-ubyte",
    "t10k-labels-idx1-ubyte",
]


def fetch(url: str) -> bytes:
    print(f"  downloading {url}")
    with urllib.request.urlopen(url, timeout=120) as r:
        return r.read()


def save(path: str, payload: bytes) -> None:
    with open(path, "wb") as f:
        f.write(payload)
    print(f"  wrote {path} ({len(payload)} bytes)")


def fetch_uci_zip(dataset_id: int, slug: str, member: str, dest: str) -> None:
    blob = fetch(f"{UCI}/{dataset_id}/{slug}.zip")
    with zipfile.ZipFile(io.BytesIO(blob)) as z:
        save(dest, z.read(member))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dest", default="data")
    ap.add_argument("--skip-mnist", action="store_true")
    args = ap.parse_args()
    os.makedirs(args.dest, exist_ok=True)

    print("abalone:")
    fetch_uci_zip(1, "abalone", "abalone.data",
                  os.path.join(args.dest, "abalone.data"))

    print("hcv:")
    fetch_uci_zip(571, "hcv+data", "hcvdat0.csv",
                  os.path.join(args.dest, "hcvdat0.csv"))

    if not args.skip_mnist:
        print("mnist:")
        for name in MNIST_FILES:
            out = os.path.join(args.dest, name)
            if os.path.exists(out):
                print(f"  {out} already present")
                continue
            last_err = None
            for mirror in MNIST_MIRRORS:
                try:
                    save(out, gzip.decompress(fetch(f"{mirror}/{name}.gz")))
                    break
                except Exception as e:  # try the next mirror
                    last_err = e
            else:
                print(f"  failed to fetch {name}: {last_err}", file=sys.stderr)
                return 1

    print("done")
    return 0


if __name__ == "__main__":
    sys.exit(main())
