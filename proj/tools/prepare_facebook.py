#!/usr/bin/env python3
# Copyright 2026 The hashgnn Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Convert the SNAP Facebook ego-network archive into hashgnn's text formats.

Usage:
    prepare_facebook.py SNAP_DIR OUT_DIR

SNAP_DIR is the unpacked facebook.tar.gz (the directory holding <ego>.edges,
<ego>.feat, <ego>.egofeat, <ego>.featnames), optionally with
facebook_combined.txt next to them. OUT_DIR receives facebook.edges and
facebook.attrs.

Feature columns are local to each ego file; their names end in
"anonymized feature <N>", and N is used as the shared attribute id.
"""

import argparse
import pathlib
import re
import sys

FEATURE_ID = re.compile(r"anonymized feature (\d+)\s*$")


def read_featnames(path):
    local_to_global = []
    for line in path.read_text().splitlines():
        match = FEATURE_ID.search(line)
        if not match:
            raise ValueError(f"{path}: cannot parse feature name {line!r}")
        local_to_global.append(int(match.group(1)))
    return local_to_global


def main(argv):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("snap_dir", type=pathlib.Path)
    parser.add_argument("out_dir", type=pathlib.Path)
    args = parser.parse_args(argv)

    attrs = {}
    edges = set()

    def add_edge(a, b):
        if a != b:
            edges.add((min(a, b), max(a, b)))

    for names in sorted(args.snap_dir.glob("*.featnames")):
        ego = int(names.stem)
        mapping = read_featnames(names)

        def take(node, bits):
            ids = attrs.setdefault(node, set())
            ids.update(mapping[i] for i, bit in enumerate(bits) if bit == "1")

        ego_bits = (args.snap_dir / f"{ego}.egofeat").read_text().split()
        take(ego, ego_bits)
        for line in (args.snap_dir / f"{ego}.feat").read_text().splitlines():
            parts = line.split()
            if parts:
                node = int(parts[0])
                take(node, parts[1:])
                add_edge(ego, node)
        for line in (args.snap_dir / f"{ego}.edges").read_text().splitlines():
            parts = line.split()
            if len(parts) == 2:
                add_edge(int(parts[0]), int(parts[1]))

    combined = args.snap_dir / "facebook_combined.txt"
    if combined.exists():
        edges = set()
        for line in combined.read_text().splitlines():
            parts = line.split()
            if len(parts) == 2:
                add_edge(int(parts[0]), int(parts[1]))

    # Dense attribute ids in order of the original feature number.
    universe = sorted({a for ids in attrs.values() for a in ids})
    dense = {a: i for i, a in enumerate(universe)}

    args.out_dir.mkdir(parents=True, exist_ok=True)
    with open(args.out_dir / "facebook.edges", "w") as out:
        for a, b in sorted(edges):
            out.write(f"{a} {b}\n")
    with open(args.out_dir / "facebook.attrs", "w") as out:
        out.write(f"#universe {len(universe)}\n")
        for node in sorted(attrs):
            ids = sorted(dense[a] for a in attrs[node])
            out.write(" ".join(map(str, [node, *ids])) + "\n")

    nodes = {n for e in edges for n in e} | set(attrs)
    print(f"nodes={len(nodes)} edges={len(edges)} attributes={len(universe)}", file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv[1:])
