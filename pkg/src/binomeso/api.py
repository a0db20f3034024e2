"""Command dispatch shared by the HTTP service and the CLI.

run_command returns (report, exit_code); the report always carries the
schema version, an input echo, and either a result or a structured error.
Exit codes: 0 ok, 2 input error, 3 capability/resource error, 4 bound too
small (verification failed).
"""

import time

from .cellular import cellular_data, cellular_decomposition
from .errors import BinomesoError, BoundTooSmallError, CapabilityError, InputError
from .grading import (NotPositiveError, check_positive_grading, is_homogeneous,
                      toral_classify)
from .groebner import Ideal
from .lattice import kernel_lattice, lattice_of_cellular, smith_normal_form
from .meso import WitnessSearch, is_mesoprimary, mesoprimary_decomposition
from .primdec import (associated_primes, hull, meso_toral_part,
                      primary_decomposition, toral_part)
from .problems import format_problem, parse_problem, parse_polynomial
from .reduction import make_restriction, restrict_ideal, witness_transfer_check
from .reports import (SCHEMA_VERSION, emit_congruence_dot, ideal_to_json,
                      meso_component_to_json, monomial_to_json, names,
                      poly_to_json, primary_component_to_json, witness_to_json)

COMMANDS = (
    "check", "cellular", "meso", "primary", "witnesses", "hull",
    "toral-part", "meso-toral-part", "restrict", "transfer-check", "diagram",
)


def _sigma_indices(ring, sigma_names):
    return tuple(sorted(ring.var_index(s.strip()) for s in sigma_names))


def _build_grading(pf, required=False):
    if pf.grading_rows is None:
        if required:
            raise InputError("this command needs a 'grading:' line in the problem file")
        return None
    return check_positive_grading(pf.grading_rows)


def _require_binomial(pf):
    bad = [g for g in pf.generators if not g.is_binomial()]
    if bad:
        raise InputError(
            f"generator {bad[0].format()} has more than two terms; "
            "this command needs binomial generators"
        )


def _cmd_check(pf, options):
    I = pf.ideal
    out = {
        "binomial_generators": all(g.is_binomial() for g in pf.generators),
    }
    is_bin, witness = I.is_binomial_ideal()
    out["binomial_ideal"] = {
        "is_binomial": is_bin,
        "witness": poly_to_json(witness) if witness is not None else None,
    }
    if pf.grading_rows is not None:
        try:
            grading = check_positive_grading(pf.grading_rows)
            out["positive_grading"] = {
                "positive": True,
                "h": [str(x) for x in grading.h],
            }
            out["homogeneous"] = is_homogeneous(I, grading)
        except NotPositiveError as e:
            out["positive_grading"] = {"positive": False, "reason": str(e)}
            out["homogeneous"] = None
    else:
        out["positive_grading"] = None
        out["homogeneous"] = None
    if I.is_unit():
        out["cellular"] = None
        out["mesoprimary"] = None
        return out
    data = cellular_data(I)
    out["cellular"] = {
        "cellular": data.cellular,
        "sigma": names(I.ring, data.sigma),
        "orders": {I.ring.names[j]: N for j, N in sorted(data.orders.items())},
        "witness_variable": (
            I.ring.names[data.witness_var] if data.witness_var is not None else None
        ),
    }
    ok, info = is_mesoprimary(I)
    detail = {"mesoprimary": ok}
    if not ok and "violating_monomial" in info:
        detail["violating_monomial"] = monomial_to_json(
            info["violating_monomial"], I.ring
        )
    if not ok and "non_cellular_variable" in info:
        detail["non_cellular_variable"] = I.ring.names[info["non_cellular_variable"]]
    out["mesoprimary"] = detail
    return out


def _cmd_cellular(pf, options):
    _require_binomial(pf)
    leaves = cellular_decomposition(pf.ideal)
    return {
        "components": [
            {
                "ideal": ideal_to_json(leaf),
                "sigma": names(pf.ring, data.sigma),
                "orders": {pf.ring.names[j]: N for j, N in sorted(data.orders.items())},
            }
            for leaf, data in leaves
        ]
    }


def _cmd_meso(pf, options):
    _require_binomial(pf)
    grading = _build_grading(pf)
    dec = mesoprimary_decomposition(pf.ideal, grading=grading,
                                    bound=options.get("bound"))
    return {
        "graded": dec.graded,
        "bound": str(dec.bound),
        "sigmas": [names(pf.ring, s) for s in dec.sigmas],
        "components": [meso_component_to_json(c) for c in dec.components],
        "merged": [meso_component_to_json(c) for c in dec.merged],
        "verified": True,
    }


def _cmd_primary(pf, options):
    _require_binomial(pf)
    grading = _build_grading(pf)
    pd = primary_decomposition(pf.ideal, grading=grading, bound=options.get("bound"))
    return {
        "graded": pd.graded,
        "components": [primary_component_to_json(c) for c in pd.components],
        "associated_primes": [
            {"prime": ideal_to_json(p), "minimal": mn}
            for p, mn in associated_primes(pd)
        ],
        "verified": True,
    }


def _cmd_witnesses(pf, options):
    _require_binomial(pf)
    grading = _build_grading(pf)
    I = pf.ideal
    if options.get("sigma") is not None:
        sigmas = [_sigma_indices(pf.ring, options["sigma"])]
    else:
        leaves = cellular_decomposition(I)
        sigmas = sorted({d.sigma for _, d in leaves} | {tuple(range(pf.ring.nvars))})
    out = []
    for sig in sigmas:
        search = WitnessSearch(I, sig, grading, options.get("bound"))
        wits = search.monomial_witnesses()
        essential = search.essential_witnesses()
        ess_keys = {r.monomial for r in essential}
        records = []
        for r in wits:
            rr = witness_to_json(r, pf.ring)
            rr["essential"] = r.monomial in ess_keys
            records.append(rr)
        out.append({
            "sigma": names(pf.ring, sig),
            "bound": str(search.bound),
            "witnesses": records,
        })
    return {"searches": out}


def _cmd_hull(pf, options):
    _require_binomial(pf)
    grading = _build_grading(pf)
    H, binom, witness, pd = hull(pf.ideal, grading=grading, bound=options.get("bound"))
    return {
        "hull": ideal_to_json(H),
        "is_binomial": binom,
        "witness": poly_to_json(witness) if witness is not None else None,
        "components": [primary_component_to_json(c) for c in pd.components],
    }


def _classify_components_by_kernel(ideals, rows, ring):
    """Toral/Andean by the lattice-kernel condition alone (no positivity)."""
    flags = []
    for I in ideals:
        data = cellular_data(I)
        if not data.cellular:
            raise InputError("component is not cellular; cannot classify")
        L, _ = lattice_of_cellular(I, data.sigma)
        cols = [[rows[k][j] for k in range(len(rows))] for j in data.sigma]
        ker = kernel_lattice(cols, ring.nvars, positions=list(data.sigma))
        flags.append("toral" if L.saturation().equals(ker) else "Andean")
    return flags


def _cmd_toral_part(pf, options):
    grading_rows = pf.grading_rows
    if grading_rows is None:
        raise InputError("toral-part needs a 'grading:' line")
    components_text = options.get("from_components")
    if components_text is not None:
        ideals = []
        for line_no, line in enumerate(components_text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            gens = [
                parse_polynomial(chunk.strip(), pf.ring, line_no)
                for chunk in line.split(",") if chunk.strip()
            ]
            ideals.append(Ideal(pf.ring, gens))
        if not ideals:
            raise InputError("component file has no components")
        try:
            grading = check_positive_grading(grading_rows)
            flags = []
            for I in ideals:
                flags.append(toral_classify(I, grading).kind)
            positive = True
        except NotPositiveError:
            flags = _classify_components_by_kernel(ideals, grading_rows, pf.ring)
            positive = False
        toral = [I for I, f in zip(ideals, flags) if f == "toral"]
        out = None
        for I in toral:
            out = I if out is None else out.intersect(I)
        if out is None:
            out = Ideal(pf.ring, [pf.ring.one()])
        binom, witness = out.is_binomial_ideal()
        return {
            "from_components": True,
            "grading_positive": positive,
            "flags": flags,
            "toral_part": ideal_to_json(out),
            "is_binomial": binom,
            "witness": poly_to_json(witness) if witness is not None else None,
        }
    _require_binomial(pf)
    grading = check_positive_grading(grading_rows)
    pd = primary_decomposition(pf.ideal, grading=grading, bound=options.get("bound"))
    part, info = toral_part(pd, grading)
    binom, witness = part.is_binomial_ideal()
    return {
        "from_components": False,
        "toral_part": ideal_to_json(part),
        "is_binomial": binom,
        "witness": poly_to_json(witness) if witness is not None else None,
        "info": info,
        "components": [primary_component_to_json(c) for c in pd.components],
    }


def _cmd_meso_toral_part(pf, options):
    _require_binomial(pf)
    grading = _build_grading(pf, required=True)
    dec = mesoprimary_decomposition(pf.ideal, grading=grading,
                                    bound=options.get("bound"))
    part, flags = meso_toral_part(dec, grading)
    binom, witness = part.is_binomial_ideal()
    return {
        "toral_part": ideal_to_json(part),
        "is_binomial": binom,
        "witness": poly_to_json(witness) if witness is not None else None,
        "flags": flags,
        "merged": [meso_component_to_json(c) for c in dec.merged],
    }


def _parse_nu(ring, nu_texts):
    from fractions import Fraction

    out = []
    for t in nu_texts:
        out.append(ring.field.from_fraction(Fraction(t.strip())))
    return tuple(out)


def _cmd_restrict(pf, options):
    _require_binomial(pf)
    if options.get("sigma") is None:
        raise InputError("restrict needs --sigma")
    sigma = _sigma_indices(pf.ring, options["sigma"])
    nu = None
    if options.get("nu") is not None:
        nu = _parse_nu(pf.ring, options["nu"])
    ctx = make_restriction(pf.ideal, sigma, nu=nu)
    Ibar = restrict_ideal(pf.ideal, ctx)
    return {
        "sigma": names(pf.ring, sigma),
        "nu": [pf.ring.field.format(v) for v in ctx.nu],
        "restricted_ring": list(ctx.restricted_ring.names),
        "restricted_ideal": ideal_to_json(Ibar),
    }


def _cmd_transfer_check(pf, options):
    _require_binomial(pf)
    grading = _build_grading(pf)
    if options.get("sigma") is None:
        raise InputError("transfer-check needs --sigma")
    sigma = _sigma_indices(pf.ring, options["sigma"])
    rep = witness_transfer_check(pf.ideal, sigma, grading=grading,
                                 bound=options.get("bound"))
    ring = pf.ring
    return {
        "sigma": names(ring, sigma),
        "witnesses_match": rep["witnesses_match"],
        "essential_match": rep["essential_match"],
        "full_witnesses": [monomial_to_json(u, ring) for u in rep["full_witnesses"]],
        "restricted_witnesses": [
            monomial_to_json(u, ring) for u in rep["restricted_witnesses"]
        ],
        "only_full": [monomial_to_json(u, ring) for u in rep["only_full"]],
        "only_restricted": [
            monomial_to_json(u, ring) for u in rep["only_restricted"]
        ],
    }


def _cmd_diagram(pf, options):
    _require_binomial(pf)
    region = options.get("region") or 4
    dot = emit_congruence_dot(pf.ideal, region)
    return {"region": region, "dot": dot}


_DISPATCH = {
    "check": _cmd_check,
    "cellular": _cmd_cellular,
    "meso": _cmd_meso,
    "primary": _cmd_primary,
    "witnesses": _cmd_witnesses,
    "hull": _cmd_hull,
    "toral-part": _cmd_toral_part,
    "meso-toral-part": _cmd_meso_toral_part,
    "restrict": _cmd_restrict,
    "transfer-check": _cmd_transfer_check,
    "diagram": _cmd_diagram,
}


def run_command(command, problem_text, options=None):
    options = dict(options or {})
    started = time.monotonic()
    report = {"schema": SCHEMA_VERSION, "command": command, "ok": False}
    try:
        if command not in _DISPATCH:
            raise InputError(
                f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}"
            )
        pf = parse_problem(problem_text, field_override=options.get("field"))
        report["input"] = {
            "ring": list(pf.ring.names),
            "field": pf.field_text,
            "grading": pf.grading_rows,
            "generators": [g.format() for g in pf.generators],
        }
        result = _DISPATCH[command](pf, options)
        report["ok"] = True
        report["exit_code"] = 0
        report["result"] = result
    except BoundTooSmallError as e:
        report["error"] = {"kind": "bound-too-small", "message": str(e),
                           "bound": str(e.bound)}
        report["exit_code"] = e.exit_code
    except CapabilityError as e:
        err = {"kind": "capability", "message": str(e)}
        if e.required_cyclotomic:
            err["required_field"] = f"QQ(zeta_{e.required_cyclotomic})"
        report["error"] = err
        report["exit_code"] = e.exit_code
    except BinomesoError as e:
        report["error"] = {"kind": "input", "message": str(e)}
        report["exit_code"] = e.exit_code
    report["timing_ms"] = int((time.monotonic() - started) * 1000)
    return report, report["exit_code"]
