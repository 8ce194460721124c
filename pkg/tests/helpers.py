from tropfactor import equal_as_complexes, parse_poly


def expand_multiplicities(factors):
    out = []
    for u, m in factors:
        out += [u] * m
    return out


def match_up_to_complexes(got, want) -> bool:
    """Multiset equality of two unit lists under =_3."""
    rest = list(want)
    for u in got:
        for i, w in enumerate(rest):
            if u.n == w.n and equal_as_complexes(u, w) is not None:
                del rest[i]
                break
        else:
            return False
    return not rest


def parse_all(texts, n):
    return [parse_poly(t, n) for t in texts]


def simplex_coeffs(basis, coeffs) -> dict:
    """Nonzero coefficients of a decomposition keyed by the members' index tuples."""
    out = {}
    for name, c in zip(basis.names, coeffs):
        if c:
            out[tuple(int(i) for i in name[2:-1].split(","))] = c
    return out


def named_coeffs(basis, coeffs) -> dict:
    return {name: c for name, c in zip(basis.names, coeffs) if c}


def evaluate(f, x):
    """``max_a (c_a + a . x)`` at a rational point."""
    return max(c + sum(a_i * x_i for a_i, x_i in zip(a, x)) for a, c in f.terms)


# criterion number -> [(passed, detail)], printed at the end of the run
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(n, []).append((ok, detail))
