"""Term orders on exponent tuples.

An order exposes ``key(e)`` mapping an exponent tuple to a sortable tuple;
larger key means larger monomial. All three orders are total, multiplicative
and well-orders (x^0 is minimal).
"""


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class GrevLex:
    name = "grevlex"

    def key(self, exps):
        return _grevlex_key(exps)

    def signature(self):
        return ("grevlex",)

    def __repr__(self):
        return "grevlex"


class Lex:
    name = "lex"

    def key(self, exps):
        return tuple(exps)

    def signature(self):
        return ("lex",)

    def __repr__(self):
        return "lex"


class Elimination:
    """Block order eliminating the given variable indices.

    Any monomial involving a block variable exceeds every monomial without
    one, so the elements of a Groebner basis free of block variables generate
    the elimination ideal.
    """

    name = "elimination"

    def __init__(self, block, nvars):
        self.block = tuple(sorted(block))
        self.rest = tuple(i for i in range(nvars) if i not in set(block))

    def key(self, exps):
        b = tuple(exps[i] for i in self.block)
        r = tuple(exps[i] for i in self.rest)
        return (_grevlex_key(b), _grevlex_key(r))

    def signature(self):
        return ("elim", self.block)

    def __repr__(self):
        return f"elim{list(self.block)}"


GREVLEX = GrevLex()
LEX = Lex()
