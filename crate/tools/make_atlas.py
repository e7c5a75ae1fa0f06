#!/usr/bin/env python3
"""Regenerate the bundled atlas group and automorphism files.

Everything except J1 is built from a small closed-form construction here.
J1 comes from tools/j1_coset_action.py (Janko's 7x7 matrices over GF(11)
acting on the 266 right cosets of a PSL(2,11) subgroup) and is read from
its json output.
"""
import itertools, json, os, sys

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "cli", "atlas")


def cyc(n, *cycles):
    img = list(range(1, n + 1))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b
    return img


def vec_action(q, mats):
    pts = [(a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)]
    idx = {v: i + 1 for i, v in enumerate(pts)}
    gens = []
    for m in mats:
        gens.append([idx[((v[0] * m[0][0] + v[1] * m[1][0]) % q, (v[0] * m[0][1] + v[1] * m[1][1]) % q)] for v in pts])
    return len(pts), gens, idx, pts


def projective_line(q, maps):
    pts = list(range(q)) + ["inf"]
    idx = {v: i + 1 for i, v in enumerate(pts)}
    return len(pts), [[idx[f(z)] for z in pts] for f in maps]


def quaternion_regular():
    # units +-1, +-i, +-j, +-k as (sign, unit)
    units = ["1", "i", "j", "k"]
    table = {("1", u): (1, u) for u in units}
    table.update({(u, "1"): (1, u) for u in units})
    table.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                  ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                  ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for u in units for s in (1, -1)]
    idx = {e: n + 1 for n, e in enumerate(elems)}

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    gens = [[idx[mul(x, g)] for x in elems] for g in [(1, "i"), (1, "j")]]
    return 8, gens


def write_group(name, fname, degree, gens, provenance):
    with open(os.path.join(OUT, "groups", fname), "w") as f:
        json.dump({"name": name, "degree": degree, "generators": gens, "provenance": provenance}, f)
        f.write("\n")


def conj(t, g):
    # t^-1 g t acting on the right, t an involution given as image list
    n = len(g)
    tinv = [0] * n
    for i, x in enumerate(t):
        tinv[x - 1] = i + 1
    return [t[g[tinv[i] - 1] - 1] for i in range(n)]


ORDERS = {"C2": 2, "C3": 3, "S3": 6, "S4": 24, "A4": 12, "A5": 60, "SL2(3)": 24, "SL2(5)": 120,
          "PSL2(7)": 168, "C7:C3": 21, "D8": 8, "Q8": 8, "J1": 175560}


def main():
    entries = []

    def add(name, fname, degree, gens, provenance, table=None, aut=None, names=None):
        write_group(name, fname, degree, gens, provenance)
        e = {"name": name, "order": ORDERS[name], "group": "groups/" + fname}
        if table:
            e["table"] = table
        if names:
            e["character_names"] = names
        if aut:
            e["automorphisms"] = aut
        entries.append(e)

    add("C2", "C2.json", 2, [cyc(2, [1, 2])], "cyclic group of order 2")
    add("C3", "C3.json", 3, [cyc(3, [1, 2, 3])], "cyclic group of order 3")
    add("S3", "S3.json", 3, [cyc(3, [1, 2]), cyc(3, [1, 2, 3])], "natural action")
    add("S4", "S4.json", 4, [cyc(4, [1, 2]), cyc(4, [1, 2, 3, 4])], "natural action")
    add("A4", "A4.json", 4, [cyc(4, [1, 2, 3]), cyc(4, [1, 2], [3, 4])], "natural action")
    a5 = [cyc(5, [1, 2, 3]), cyc(5, [1, 2, 3, 4, 5])]
    add("A5", "A5.json", 5, a5, "natural action", aut="auts/A5.json")
    t = cyc(5, [1, 2])
    with open(os.path.join(OUT, "auts", "A5.json"), "w") as f:
        json.dump({"group": "A5", "maps": [{"name": "conj_(1,2)", "generator_images": [conj(t, g) for g in a5]}]}, f)
        f.write("\n")

    deg, gens, _, _ = vec_action(3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
    add("SL2(3)", "SL2_3.json", deg, gens, "action on nonzero vectors of GF(3)^2")
    deg, gens, idx, pts = vec_action(5, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
    # conjugation by diag(2,1) from GL(2,5) induces an outer automorphism
    d = [idx[((v[0] * 2) % 5, v[1])] for v in pts]
    add("SL2(5)", "SL2_5.json", deg, gens, "action on nonzero vectors of GF(5)^2", aut="auts/SL2_5.json")
    with open(os.path.join(OUT, "auts", "SL2_5.json"), "w") as f:
        dinv = [0] * len(d)
        for i, x in enumerate(d):
            dinv[x - 1] = i + 1
        imgs = [[d[g[dinv[i] - 1] - 1] for i in range(len(g))] for g in gens]
        json.dump({"group": "SL2(5)", "maps": [{"name": "conj_diag(2,1)", "generator_images": imgs}]}, f)
        f.write("\n")

    q = 7
    inv = {x: pow(x, q - 2, q) for x in range(1, q)}

    def tr(z):
        return "inf" if z == "inf" else (z + 1) % q

    def inv_neg(z):
        if z == "inf":
            return 0
        if z == 0:
            return "inf"
        return (-inv[z]) % q

    def mult3(z):
        return "inf" if z == "inf" else (3 * z) % q

    deg, gens = projective_line(q, [tr, inv_neg])
    add("PSL2(7)", "PSL2_7.json", deg, gens, "action on the projective line over GF(7)", aut="auts/PSL2_7.json")
    _, (m3,) = projective_line(q, [mult3])
    m3inv = [0] * len(m3)
    for i, x in enumerate(m3):
        m3inv[x - 1] = i + 1
    with open(os.path.join(OUT, "auts", "PSL2_7.json"), "w") as f:
        imgs = [[m3[g[m3inv[i] - 1] - 1] for i in range(len(g))] for g in gens]
        json.dump({"group": "PSL2(7)", "maps": [{"name": "z->3z", "generator_images": imgs}]}, f)
        f.write("\n")

    c7c3 = [[(x + 1) % 7 + 1 for x in range(7)], [(2 * x) % 7 + 1 for x in range(7)]]
    add("C7:C3", "C7_C3.json", 7, c7c3, "affine maps x->x+1, x->2x on GF(7)", aut="auts/C7_C3.json",
        names=["χ1", "χ1a", "χ1b", "χ3a", "χ3b"])
    neg = [(-x) % 7 + 1 for x in range(7)]
    with open(os.path.join(OUT, "auts", "C7_C3.json"), "w") as f:
        imgs = [[neg[g[neg[i] - 1] - 1] for i in range(7)] for g in c7c3]
        json.dump({"group": "C7:C3", "maps": [{"name": "x->-x", "generator_images": imgs}]}, f)
        f.write("\n")

    add("D8", "D8.json", 4, [cyc(4, [1, 2, 3, 4]), cyc(4, [1, 3])], "symmetries of a square")
    deg, gens = quaternion_regular()
    add("Q8", "Q8.json", deg, gens, "right regular action of the quaternion units")

    if len(sys.argv) > 1:
        j1 = json.load(open(sys.argv[1]))
    else:
        # keep the previously generated J1 generators
        with open(os.path.join(OUT, "groups", "J1.json")) as f:
            j1 = json.load(f)["generators"]
    if j1 is not None:
        add("J1", "J1.json", 266, j1,
            "images of Janko's 7x7 generators Y (order 7) and Z (order 5) over GF(11) "
            "acting on the 266 right cosets of a PSL(2,11) subgroup; see tools/j1_coset_action.py. "
            "Validated on load by the order 175560 = 2^3*3*5*7*11*19.",
            table="tables/J1.json")
    with open(os.path.join(OUT, "index.json"), "w") as f:
        json.dump({"entries": entries}, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
