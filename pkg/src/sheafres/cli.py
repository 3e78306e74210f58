"""Command-line client for the resolution service.

By default every subcommand runs the service in-process (no network); with
``--server URL`` the same requests go to a remote instance.  Exit codes:
0 success, 1 validation failure, 2 usage error, 3 internal error.
"""

import argparse
import os
import sys

import httpx

from . import documents as docs

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

FIELD_ENV = "SHEAFRES_FIELD"


def _client(server):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # In-process: drive the ASGI app through the synchronous test transport.
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service import app
    return TestClient(app, raise_server_exceptions=False)


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return docs.loads(fh.read())
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE) from exc
    except docs.DocumentError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID) from exc


def _emit(doc, out=None):
    text = docs.dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _post(client, path, payload):
    try:
        resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        print(f"error: service unreachable: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_INTERNAL) from exc
    if resp.status_code == 200:
        return resp.json()
    detail = resp.json().get("detail", resp.text) \
        if resp.headers.get("content-type", "").startswith("application/json") \
        else resp.text
    print(f"error: {detail}", file=sys.stderr)
    if resp.status_code == 400:
        raise SystemExit(EXIT_INVALID)
    if resp.status_code == 422:
        raise SystemExit(EXIT_USAGE)
    raise SystemExit(EXIT_INTERNAL)


def _field_arg(args):
    return args.field or os.environ.get(FIELD_ENV)


def cmd_validate(args):
    with _client(args.server) as client:
        report = _post(client, "/validate", {"document": _load(args.input)})
    _emit(report, args.output)
    return EXIT_OK if report.get("valid") else EXIT_INVALID


def cmd_resolve(args):
    payload = {"document": _load(args.input), "method": args.method,
               "max_degree": args.max_degree, "field": _field_arg(args)}
    with _client(args.server) as client:
        result = _post(client, "/resolve", payload)
    _emit(result, args.output)
    summary = " / ".join(str(c) for c in result.get("summary", []))
    certs = result.get("certificates", {})
    print(f"generators per degree: {summary or '(empty)'}", file=sys.stderr)
    if args.method == "minimal":
        print(f"certified exact: {certs.get('exact')}, minimal: "
              f"{certs.get('minimal')}", file=sys.stderr)
    return EXIT_OK


def cmd_multiplicities(args):
    payload = {"document": _load(args.input), "verify": args.verify,
               "field": _field_arg(args)}
    with _client(args.server) as client:
        result = _post(client, "/multiplicities", payload)
    _emit(result, args.output)
    if args.verify and not result.get("verified"):
        return EXIT_INVALID
    return EXIT_OK


def cmd_pushforward(args):
    payload = {"sheaf": _load(args.sheaf), "map": _load(args.map),
               "degrees": args.degree, "compact": args.compact,
               "field": _field_arg(args)}
    with _client(args.server) as client:
        result = _post(client, "/pushforward", payload)
    _emit(result, args.output)
    return EXIT_OK


def cmd_cohomology(args):
    simplex = None
    if args.simplex is not None:
        simplex = [int(v) if v.strip().lstrip("-").isdigit() else v.strip()
                   for v in args.simplex.split(",")]
    subset = args.open.split(",") if args.open is not None else None
    payload = {"document": _load(args.input), "simplex": simplex,
               "subset": subset, "field": _field_arg(args)}
    with _client(args.server) as client:
        result = _post(client, "/cohomology", payload)
    _emit(result, args.output)
    return EXIT_OK


def cmd_serve(args):
    import uvicorn
    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sheafres",
        description="Exact injective resolutions of sheaves on finite "
                    "posets")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default runs "
                             "in process")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="input document path")
        p.add_argument("--field", default=None,
                       help=f"'rational' or 'mod p' (default from "
                            f"${FIELD_ENV}, else rational)")
        p.add_argument("-o", "--output", default=None,
                       help="write the output document here instead of "
                            "stdout")

    p = sub.add_parser("validate", help="check a document")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("resolve", help="compute an injective resolution")
    common(p)
    p.add_argument("--method", choices=("minimal", "order-complex"),
                   default="minimal")
    p.add_argument("--max-degree", type=int, default=None)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("multiplicities",
                       help="indecomposable multiplicity table")
    common(p)
    p.add_argument("--verify", action="store_true",
                   help="compare against the star cohomology oracle "
                        "(simplicial_complex input only)")
    p.set_defaults(func=cmd_multiplicities)

    p = sub.add_parser("pushforward", help="derived pushforward sheaves")
    p.add_argument("sheaf", help="sheaf (or poset / complex) document path")
    p.add_argument("map", help="poset map document path")
    common(p, with_input=False)
    p.add_argument("--compact", action="store_true",
                   help="compact supports (extend by zero first)")
    p.add_argument("--degree", type=int, action="append", default=None,
                   help="degree to compute; repeatable; default all")
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("cohomology", help="cohomology oracles")
    common(p)
    p.add_argument("--simplex", default=None,
                   help="comma-separated vertices: compactly supported "
                        "cohomology of this simplex's open star")
    p.add_argument("--open", default=None,
                   help="comma-separated element names of an up-closed "
                        "subset (poset input)")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INTERNAL
    except Exception as exc:  # stable contract: internal errors exit 3
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
