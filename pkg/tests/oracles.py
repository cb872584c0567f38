"""Independent brute-force oracles used to freeze derived values."""
import itertools


def brute_force_paths(arrows, relations, vertices, max_length=12):
    """All relation-avoiding arrow words, by exhaustive product enumeration."""
    arrows = dict(arrows)
    rels = [tuple(r) for r in relations]
    out = [("@", v) for v in vertices]
    for n in range(1, max_length + 1):
        found = 0
        for w in itertools.product(sorted(arrows), repeat=n):
            if any(arrows[w[i]][1] != arrows[w[i + 1]][0] for i in range(n - 1)):
                continue
            if any(w[i:i + len(r)] == r for r in rels for i in range(n - len(r) + 1)):
                continue
            out.append(w)
            found += 1
        if not found:
            break
    return out


def za_fundamental_domain_count(k, n, window=60):
    """Vertices of ZA_k modulo tau^n, counted as orbits on a finite window."""
    vertices = [(p, q) for p in range(window) for q in range(1, k + 1)]
    orbit_of = {}
    classes = 0
    for v in vertices:
        if v in orbit_of:
            continue
        classes += 1
        p, q = v
        for shift in range(-window, window + 1):
            orbit_of[(p + shift * n, q)] = classes
    return classes
