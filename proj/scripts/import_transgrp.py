#!/usr/bin/env python3
"""Convert the GAP transitive-groups library into the plain-text group database.

Usage:
    import_transgrp.py --transgrp <pkg/transgrp dir> --out data/

Reads lib/trans.grp (degrees 1-7) and data/trans<n>*.grp.gz (degree >= 8)
from a GAP `transgrp` package checkout. Writes:

  transitive_deg<n>.db   solvable transitive groups of degree n (5 <= n <= 9),
                         joined with data/reference_values.tsv
  small_groups.db        the regular transitive groups of degree 1..24, i.e.
                         one permutation representation of every group of
                         order <= 24

Solvability and orders are checked with sympy; the C++ loader re-validates
orders and transitivity independently.
"""

import argparse
import glob
import gzip
import os
import re
import sys

from sympy.combinatorics import Permutation, PermutationGroup


class GapReader:
    """Minimal reader for the subset of GAP syntax used in trans*.grp."""

    def __init__(self, text):
        self.s = text
        self.i = 0

    def ws(self):
        while self.i < len(self.s) and self.s[self.i] in " \t\r\n\\":
            self.i += 1

    def value(self):
        self.ws()
        c = self.s[self.i]
        if c == "[":
            return self.list_()
        if c == "(":
            return self.perm()
        if c == '"':
            j = self.s.index('"', self.i + 1)
            out = self.s[self.i + 1:j]
            self.i = j + 1
            return out
        m = re.compile(r"-?\d+").match(self.s, self.i)
        if m:
            self.i = m.end()
            return int(m.group())
        raise ValueError("unexpected %r at %d" % (self.s[self.i:self.i + 20], self.i))

    def list_(self):
        self.i += 1
        out = []
        while True:
            self.ws()
            if self.s[self.i] == "]":
                self.i += 1
                return out
            out.append(self.value())
            self.ws()
            if self.s[self.i] == ",":
                self.i += 1

    def perm(self):
        cycles = []
        while True:
            self.ws()
            if self.i >= len(self.s) or self.s[self.i] != "(":
                return ("perm", cycles)
            j = self.s.index(")", self.i)
            body = re.sub(r"\s", "", self.s[self.i + 1:j])
            cycles.append([int(x) for x in body.split(",")] if body else [])
            self.i = j + 1


def read_degree_file(path):
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rt", encoding="latin-1") as f:
        text = f.read()
    out = {}
    for m in re.finditer(r"TRANSGRP\[(\d+)\](\{\[(\d+)\.\.(\d+)\]\})?:=\s*", text):
        deg = int(m.group(1))
        r = GapReader(text)
        r.i = m.end()
        if text[r.i] == "[" and text[r.i + 1] == "]":
            continue
        groups = r.value()
        start = int(m.group(3)) if m.group(3) else 1
        for k, g in enumerate(groups):
            out[(deg, start + k)] = g
    return out


def read_lib_file(path):
    with open(path, encoding="latin-1") as f:
        text = f.read()
    m = re.search(r"TRANSGRP\s*:=\s*", text)
    r = GapReader(text)
    r.i = m.end()
    out = {}
    for deg, groups in enumerate(r.value(), start=1):
        for k, g in enumerate(groups, start=1):
            out[(deg, k)] = g
    return out


def cycle_string(perm):
    return "".join("(" + ",".join(map(str, c)) + ")" for c in perm[1] if len(c) > 1) or "()"


def to_sympy(perm, degree):
    return Permutation([c for c in perm[1] if len(c) > 1], size=degree + 1)


def load_library(transgrp_dir):
    groups = read_lib_file(os.path.join(transgrp_dir, "lib", "trans.grp"))
    # Only the first chunk of each split degree is needed: groups are stored
    # by increasing order, so the regular ones come first.
    for path in sorted(glob.glob(os.path.join(transgrp_dir, "data", "trans[0-9]*.grp*"))):
        m = re.match(r"trans(\d+)(a?)\.grp", os.path.basename(path))
        if m and int(m.group(1)) <= 24:
            groups.update(read_degree_file(path))
    return groups


def group_info(entry, degree):
    gens = [x for x in entry if isinstance(x, tuple)]
    name = [x for x in entry if isinstance(x, str)][0]
    sg = [to_sympy(p, degree) for p in gens] or [Permutation([], size=degree + 1)]
    pg = PermutationGroup(sg)
    return gens, name, pg


def load_refs(path):
    refs = {}
    with open(path) as f:
        for line in f:
            if line.startswith("#") or not line.strip():
                continue
            label, name, result, malle, dummit, schmidt, star = line.rstrip("\n").split("\t")
            refs[label] = dict(name=name, result=result, malle=malle, dummit=dummit,
                               schmidt=schmidt, nilpotent=star)
    return refs


def write_record(f, label, name, degree, gens, refs=None):
    f.write("group %s%s\n" % (label, " " + name if name else ""))
    f.write("degree %d\n" % degree)
    for p in gens:
        f.write("gen %s\n" % cycle_string(p))
    if refs:
        for key in ("result", "malle", "dummit", "schmidt", "nilpotent"):
            if refs.get(key, "-") != "-":
                f.write("ref %s %s\n" % (key, refs[key]))
    f.write("end\n\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--transgrp", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--refs", default=os.path.join(os.path.dirname(__file__), "..", "data",
                                                   "reference_values.tsv"))
    args = ap.parse_args()

    lib = load_library(args.transgrp)
    refs = load_refs(args.refs)

    for degree in range(5, 10):
        path = os.path.join(args.out, "transitive_deg%d.db" % degree)
        with open(path, "w") as f:
            f.write("# Solvable transitive permutation groups of degree %d.\n" % degree)
            f.write("# Generators and numbering: GAP transgrp library (A. Hulpke; degree <= 11\n")
            f.write("# follows the Butler-McKay enumeration). `ref` rows carry published\n")
            f.write("# bound-table values: result, malle, dummit (over Q), schmidt, nilpotent.\n\n")
            d = 1
            while (degree, d) in lib:
                gens, gap_name, pg = group_info(lib[(degree, d)], degree)
                if pg.is_solvable:
                    label = "%dT%d" % (degree, d)
                    r = refs.get(label)
                    if r is None:
                        sys.exit("no reference row for solvable group %s" % label)
                    shown = r["name"] if r["name"] != "-" else ""
                    write_record(f, label, shown, degree, gens, r)
                d += 1

    with open(os.path.join(args.out, "small_groups.db"), "w") as f:
        f.write("# Regular transitive groups of degree 1..24: one permutation representation of\n")
        f.write("# each isomorphism class of groups of order <= 24.\n")
        f.write("# Generators and numbering: GAP transgrp library (A. Hulpke).\n\n")
        for degree in range(1, 25):
            d = 1
            while (degree, d) in lib:
                gens, gap_name, pg = group_info(lib[(degree, d)], degree)
                if pg.order() != degree:
                    break
                name = re.sub(r"\s+", "", gap_name)
                write_record(f, "%dT%d" % (degree, d), name, degree, gens)
                d += 1


if __name__ == "__main__":
    main()
