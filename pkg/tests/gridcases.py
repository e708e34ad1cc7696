"""The invariant grid shared by the acceptance and growth tests.

Every class row, l and n up to 5, r and p, q up to 4.  For each (class, l, n)
the smallest admissible h in 0..2 is used, with d = 0 and e = c.
"""

from functools import lru_cache

from codepth3.classtable import BB, C, G, H, S, TT, admissible, canonical_invariants

CLASSES = [C(0), C(1), C(2), C(3), S, TT, BB] + [G(r) for r in range(2, 5)] + [
    H(p, q) for p in range(5) for q in range(5)]


def codepth(cls):
    if cls.kind == "C":
        return cls.params[0]
    return 2 if cls == S else 3


@lru_cache(maxsize=None)
def grid_cases():
    out, seen = [], set()
    for cls in CLASSES:
        c = codepth(cls)
        for l in range(6):
            for n in range(6):
                for h in range(3):
                    try:
                        inv = canonical_invariants(cls, e=c, d=0, h=h, l=l, n=n)
                    except ValueError:
                        continue
                    if admissible(cls, inv).ok:
                        key = (str(cls), inv.sextuple())
                        if key not in seen:
                            seen.add(key)
                            out.append((cls, inv))
                        break
    return tuple(out)


def case_id(case):
    cls, inv = case
    return f"{cls}-l{inv.l}-n{inv.n}-h{inv.h}"
