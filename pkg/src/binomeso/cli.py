"""Command-line client for the decomposition service.

By default the CLI drives the FastAPI app in-process (no server needed);
--server points it at a running instance instead. `binomeso serve` starts
one. Exit codes: 0 ok, 2 input error, 3 capability error, 4 bound too small.
"""

import argparse
import json
import sys

import httpx

from .api import COMMANDS


def _client(server):
    if server:
        return httpx.Client(base_url=server.rstrip("/"), timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

        from .service import app

        return TestClient(app)


def _summarize(report, out):
    cmd = report.get("command")
    if not report.get("ok"):
        err = report.get("error") or {}
        print(f"{cmd}: {err.get('kind', 'error')}: {err.get('message')}", file=out)
        if "required_field" in err:
            print(f"  rerun with --field '{err['required_field']}'", file=out)
        return
    res = report.get("result", {})
    if cmd == "check":
        for key in ("binomial_generators", "homogeneous"):
            if res.get(key) is not None:
                print(f"{key}: {res[key]}", file=out)
        bi = res.get("binomial_ideal") or {}
        line = f"binomial_ideal: {bi.get('is_binomial')}"
        if bi.get("witness"):
            line += f"  (witness {bi['witness']['s']})"
        print(line, file=out)
        pg = res.get("positive_grading")
        if pg is not None:
            print(f"positive_grading: {pg.get('positive')}", file=out)
        cell = res.get("cellular")
        if cell is not None:
            if cell["cellular"]:
                print(f"cellular: sigma = {{{', '.join(cell['sigma'])}}}", file=out)
            else:
                print(f"cellular: no (variable {cell['witness_variable']})", file=out)
        mp = res.get("mesoprimary")
        if mp is not None:
            line = f"mesoprimary: {mp['mesoprimary']}"
            if mp.get("violating_monomial"):
                line += f"  (violator {mp['violating_monomial']['s']})"
            print(line, file=out)
    elif cmd in ("cellular",):
        comps = res.get("components", [])
        print(f"{len(comps)} cellular component(s):", file=out)
        for c in comps:
            gens = ", ".join(t["s"] for t in c["ideal"]["groebner"])
            print(f"  sigma {{{', '.join(c['sigma'])}}}: <{gens}>", file=out)
    elif cmd == "meso":
        comps = res.get("components", [])
        print(f"{len(comps)} coprincipal component(s):", file=out)
        for c in comps:
            gens = ", ".join(t["s"] for t in c["ideal"]["groebner"])
            wit = ", ".join(w["monomial"]["s"] for w in c["witnesses"])
            print(f"  witness {wit} (sigma {{{', '.join(c['sigma'])}}}): <{gens}>",
                  file=out)
        merged = res.get("merged", [])
        if len(merged) != len(comps):
            print(f"merged mesoprimary decomposition ({len(merged)}):", file=out)
            for c in merged:
                gens = ", ".join(t["s"] for t in c["ideal"]["groebner"])
                print(f"  <{gens}>", file=out)
    elif cmd == "primary":
        comps = res.get("components", [])
        print(f"{len(comps)} primary component(s):", file=out)
        for c in comps:
            gens = ", ".join(t["s"] for t in c["ideal"]["groebner"])
            prime = ", ".join(t["s"] for t in c["prime"]["groebner"])
            tags = []
            tags.append("minimal" if c.get("minimal") else "embedded")
            if c.get("toral"):
                tags.append(c["toral"])
            print(f"  <{gens}>", file=out)
            print(f"    prime <{prime}> ({', '.join(tags)})", file=out)
    elif cmd == "hull":
        gens = ", ".join(t["s"] for t in res["hull"]["groebner"])
        print(f"Hull: <{gens}>", file=out)
        line = f"binomial: {res['is_binomial']}"
        if res.get("witness"):
            line += f"  (witness {res['witness']['s']})"
        print(line, file=out)
    elif cmd in ("toral-part", "meso-toral-part"):
        gens = ", ".join(t["s"] for t in res["toral_part"]["groebner"])
        print(f"toral part: <{gens}>", file=out)
        line = f"binomial: {res['is_binomial']}"
        if res.get("witness"):
            line += f"  (witness {res['witness']['s']})"
        print(line, file=out)
        if "flags" in res:
            print(f"component flags: {res['flags']}", file=out)
    elif cmd == "witnesses":
        for block in res.get("searches", []):
            print(f"sigma {{{', '.join(block['sigma'])}}} "
                  f"(bound {block['bound']}):", file=out)
            for w in block["witnesses"]:
                cls = ", ".join(c["s"] for c in w["class_members"])
                flag = "essential" if w["essential"] else "witness"
                print(f"  {flag}: {w['monomial']['s']}  class {{{cls}}}", file=out)
    elif cmd == "restrict":
        gens = ", ".join(t["s"] for t in res["restricted_ideal"]["groebner"])
        print(f"restricted to k[{', '.join(res['restricted_ring'])}] "
              f"at nu = ({', '.join(res['nu'])}): <{gens}>", file=out)
    elif cmd == "transfer-check":
        print(f"witnesses match: {res['witnesses_match']}", file=out)
        print(f"essential match: {res['essential_match']}", file=out)
        if res["only_full"]:
            print(f"only full side: {[m['s'] for m in res['only_full']]}", file=out)
        if res["only_restricted"]:
            print(f"only restricted side: "
                  f"{[m['s'] for m in res['only_restricted']]}", file=out)
    elif cmd == "diagram":
        print(res["dot"], file=out, end="")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="binomeso",
        description="mesoprimary and binomial primary decomposition",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8793)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file", help="problem file")
        p.add_argument("--bound", type=int, default=None,
                       help="witness search degree bound")
        p.add_argument("--sigma", default=None,
                       help="comma-separated variable names")
        p.add_argument("--nu", default=None,
                       help="comma-separated rational coordinates")
        p.add_argument("--region", type=int, default=None,
                       help="diagram region bound")
        p.add_argument("--field", default=None,
                       help="field override, e.g. 'QQ(zeta_3)'")
        p.add_argument("--from-components", default=None,
                       help="component file for toral-part")
        p.add_argument("--json", dest="json_out", default=None,
                       help="write the full report to this file")
        p.add_argument("--dot", dest="dot_out", default=None,
                       help="write DOT output to this file (diagram)")
        p.add_argument("--server", default=None,
                       help="URL of a running binomeso service")
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        with open(args.file) as fh:
            problem = fh.read()
    except OSError as e:
        print(f"cannot read problem file: {e}", file=sys.stderr)
        return 2
    payload = {"command": args.command, "problem": problem}
    if args.bound is not None:
        payload["bound"] = args.bound
    if args.sigma:
        payload["sigma"] = [s for s in args.sigma.split(",") if s]
    if args.nu:
        payload["nu"] = [s for s in args.nu.split(",") if s]
    if args.region is not None:
        payload["region"] = args.region
    if args.field:
        payload["field"] = args.field
    if args.from_components:
        try:
            with open(args.from_components) as fh:
                payload["from_components"] = fh.read()
        except OSError as e:
            print(f"cannot read component file: {e}", file=sys.stderr)
            return 2

    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with _client(args.server) as client:
            resp = client.post("/v1/run", json=payload)
    if resp.status_code != 200:
        print(f"service error: HTTP {resp.status_code}: {resp.text}", file=sys.stderr)
        return 1
    report = resp.json()

    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.dot_out and report.get("ok") and "dot" in (report.get("result") or {}):
        with open(args.dot_out, "w") as fh:
            fh.write(report["result"]["dot"])
    _summarize(report, sys.stdout)
    return report.get("exit_code", 1)


if __name__ == "__main__":
    sys.exit(main())
