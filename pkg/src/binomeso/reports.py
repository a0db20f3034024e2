"""Report serialization (versioned JSON schema) and DOT congruence diagrams."""

from fractions import Fraction

from .fields import Cyclotomic
from .orders import GREVLEX


SCHEMA_VERSION = 1


def coeff_to_json(c, field):
    if isinstance(field, Cyclotomic):
        return [str(x) for x in c]
    return field.format(c)


def poly_to_json(p):
    field = p.ring.field
    return {
        "s": p.format(),
        "terms": [
            {"c": coeff_to_json(p.terms[e], field), "e": list(e)}
            for e in sorted(p.terms, key=GREVLEX.key, reverse=True)
        ],
    }


def ideal_to_json(I, include_groebner=True):
    out = {"generators": [poly_to_json(g) for g in I.gens]}
    if include_groebner:
        out["groebner"] = [poly_to_json(g) for g in I.groebner()]
    return out


def monomial_to_json(exps, ring):
    return {"e": list(exps), "s": ring.monomial(exps).format()}


def names(ring, indices):
    return [ring.names[i] for i in indices]


def witness_to_json(rec, ring):
    field = ring.field
    return {
        "monomial": monomial_to_json(rec.monomial, ring),
        "class_members": [monomial_to_json(m, ring) for m in rec.class_members],
        "aux": monomial_to_json(rec.aux, ring),
        "sigma": names(ring, rec.sigma),
        "essential": rec.essential,
        "certificates": {
            ring.names[i]: {
                "q": monomial_to_json(c["q"], ring),
                "lam": coeff_to_json(c["lam"], field),
                "case": c["case"],
            }
            for i, c in sorted(rec.certificates.items())
        },
        "essential_certificate": (
            {
                "p": poly_to_json(rec.essential_certificate["p"]),
                "v": monomial_to_json(rec.essential_certificate["v"], ring),
            }
            if rec.essential_certificate
            else None
        ),
    }


def meso_component_to_json(comp):
    ring = comp.ideal.ring
    return {
        "ideal": ideal_to_json(comp.ideal),
        "sigma": names(ring, comp.sigma),
        "witnesses": [witness_to_json(w, ring) for w in comp.witnesses],
        "mesoprime": ideal_to_json(comp.mesoprime),
        "monomial_part": [monomial_to_json(u, ring) for u in comp.monomial_part],
        "binomial": comp.binomial,
        "mesoprimary": comp.mesoprimary,
        "toral": comp.toral,
    }


def primary_component_to_json(comp):
    ring = comp.ideal.ring
    return {
        "ideal": ideal_to_json(comp.ideal),
        "prime": ideal_to_json(comp.prime),
        "sigma": names(ring, comp.sigma),
        "minimal": comp.minimal,
        "toral": comp.toral,
        "witnesses": [witness_to_json(w, ring) for w in comp.witnesses],
    }


def emit_congruence_dot(I, region_bound):
    """DOT graph of the congruence on monomials in the box [0, region_bound]^n.

    Nodes are monomials; an edge joins u, v when x^u - lam x^v lies in I;
    filled nodes are the monomials in I. Coordinates are emitted for up to
    three variables (planar or projected layout); beyond that the graph has
    no layout hints.
    """
    gb = I.groebner()
    ring = I.ring
    n = ring.nvars
    monos = []

    def rec(prefix):
        if len(prefix) == n:
            monos.append(tuple(prefix))
            return
        for e in range(region_bound + 1):
            rec(prefix + [e])

    rec([])
    monos.sort(key=GREVLEX.key)
    classes = {}
    in_ideal = []
    for u in monos:
        rep = gb.class_rep(u)
        if rep is None:
            in_ideal.append(u)
        else:
            classes.setdefault(rep[1], []).append(u)

    def node_id(u):
        return '"' + ",".join(str(e) for e in u) + '"'

    def pos(u):
        if n == 1:
            return f'{u[0]},0!'
        if n == 2:
            return f"{u[0]},{u[1]}!"
        if n == 3:
            x = u[0] + 0.45 * u[2]
            y = u[1] + 0.3 * u[2]
            return f"{x:.2f},{y:.2f}!"
        return None

    lines = ["graph congruence {", "  node [shape=circle, width=0.3];"]
    for u in monos:
        attrs = [f'label="{ring.monomial(u).format()}"']
        p = pos(u)
        if p is not None:
            attrs.append(f'pos="{p}"')
        if u in set(in_ideal):
            attrs.append("style=filled")
            attrs.append("fillcolor=gray80")
        lines.append(f"  {node_id(u)} [{', '.join(attrs)}];")
    for rep in sorted(classes, key=GREVLEX.key):
        members = classes[rep]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                lines.append(f"  {node_id(members[i])} -- {node_id(members[j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
