"""Command line front end and the JSON service behind the browser UI.

Every subcommand reads quivers and points as JSON files, runs one library
entry point, and prints that result's own JSON serialization.  The serve
mode exposes the same payloads over HTTP; handlers hold no state, so each
request carries everything it needs.

Exit codes: 0 success, 1 gallery mismatch, 2 bad input, 3 a resource cap
was hit.
"""

import argparse
import json
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .deep import (
    cert_abundant_acyclic,
    cert_fork_bounded,
    cert_gcd_star,
    cert_key,
    is_mysterious,
    so_may_deep,
    star3_classify,
    tree_cover,
)
from .dilation import dilation_group, stabilizer
from .errors import (
    ClusterDeepError,
    ExplorationExceeded,
    InconsistentPoint,
    NonIndependentZeroSet,
    NotAcyclic,
    NotDivisible,
    NotReducedTree,
    QuiverFormatError,
    RelationUnsatisfiable,
    TermGuardExceeded,
    WitnessError,
    ZeroAtNegativeExponent,
)
from .explore import explore_quivers, explore_seeds, forkless_part
from .gallery import run_gallery
from .quiver import IceQuiver, classify, gcd_vector, is_fork, is_key
from .variety import (
    ModelPoint,
    Witness,
    freeze_point,
    point_errors,
    propagate,
    validate_point,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_CAP = 3

# errors that mean the caller handed us something unusable
_INPUT_ERRORS = (
    QuiverFormatError,
    NotAcyclic,
    NonIndependentZeroSet,
    RelationUnsatisfiable,
    InconsistentPoint,
    WitnessError,
    NotReducedTree,
    NotDivisible,
    ZeroAtNegativeExponent,
    ValueError,
)
_CAP_ERRORS = (ExplorationExceeded, TermGuardExceeded)

_CERT_BUILDERS = {
    "gcd-star": lambda q, cap: cert_gcd_star(q),
    "key": lambda q, cap: cert_key(q),
    "abundant": lambda q, cap: cert_abundant_acyclic(q),
    "fork": cert_fork_bounded,
}


# ---------------------------------------------------------------------------
# input plumbing


def _read_json_file(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise QuiverFormatError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise QuiverFormatError("%s is not JSON: %s" % (path, exc))


def load_quiver(path: str) -> IceQuiver:
    return IceQuiver.from_json_dict(_read_json_file(path))


def load_point(path: str) -> ModelPoint:
    return ModelPoint.from_json_dict(_read_json_file(path))


def parse_word(text):
    """Comma separated one-based vertex list to internal zero-based word."""
    if text is None or text.strip() == "":
        return ()
    out = []
    for piece in text.split(","):
        try:
            k = int(piece.strip())
        except ValueError:
            raise QuiverFormatError("word entries must be integers: %r" % piece)
        if k < 1:
            raise QuiverFormatError("word entries are one-based, got %d" % k)
        out.append(k - 1)
    return tuple(out)


def build_certificate(q: IceQuiver, kind, cap: int):
    """Build the named certificate, or search the kinds in a fixed order."""
    if kind is not None:
        builder = _CERT_BUILDERS.get(kind)
        if builder is None:
            raise QuiverFormatError("unknown certificate kind %r" % kind)
        cert = builder(q, cap)
        if cert is None:
            raise QuiverFormatError("no %s certificate applies to this quiver" % kind)
        return cert
    for name in ("gcd-star", "key", "abundant", "fork"):
        try:
            cert = _CERT_BUILDERS[name](q, cap)
        except QuiverFormatError:
            cert = None
        if cert is not None:
            return cert
    return None


def quiver_report(q: IceQuiver) -> dict:
    """Shape, divisibility, key, and fork facts in one payload."""
    try:
        key = is_key(q, "tolerant")
    except (QuiverFormatError, NotAcyclic):
        key = None
    fork_return = is_fork(q)
    return {
        "quiver": q.to_json_dict(),
        "classes": classify(q).to_json_dict(),
        "gcd_vector": list(gcd_vector(q)),
        "key": {"pair": [v + 1 for v in key.pair], "mode": key.mode_used}
        if key
        else None,
        "fork_return": fork_return + 1 if fork_return is not None else None,
    }


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    q = load_quiver(args.quiver)
    word = parse_word(args.word)
    for k in word:
        if not 0 <= k < q.n:
            raise QuiverFormatError("word entry %d out of range" % (k + 1))
        q = q.mutate(k)
    _print_json(quiver_report(q))
    return EXIT_OK


def cmd_deep_check(args) -> int:
    q = load_quiver(args.quiver)
    pt = load_point(args.point)
    cert = build_certificate(q, args.cert, args.max_nodes)
    verdict = so_may_deep(q, pt, cert)
    _print_json(verdict.to_json_dict())
    return EXIT_OK


def cmd_mysterious_check(args) -> int:
    q = load_quiver(args.quiver)
    pt = load_point(args.point)
    cert = None
    if args.cert is not None:
        cert = build_certificate(q, args.cert, args.max_nodes)
    verdict = is_mysterious(q, pt, cert=cert)
    _print_json(verdict.to_json_dict())
    return EXIT_OK


def cmd_tree_cover(args) -> int:
    q = load_quiver(args.quiver)
    pt = load_point(args.point)
    verdict = tree_cover(q, pt)
    _print_json(verdict.to_json_dict())
    return EXIT_OK


def cmd_star3(args) -> int:
    if args.a < 1 or args.b < 1:
        raise QuiverFormatError("leaf weights must be positive")
    verdict = star3_classify(args.a, args.b)
    _print_json(verdict.to_json_dict())
    return EXIT_OK


def cmd_explore(args) -> int:
    q = load_quiver(args.quiver)
    if args.forkless:
        part = forkless_part(q, max_nodes=args.max_nodes, dedup="matrix")
        members = sorted((m.to_json_dict() for m in part), key=json.dumps)
        _print_json({"count": len(members), "members": members})
        return EXIT_OK
    run = explore_seeds if args.level == "seed" else explore_quivers
    report = run(q, max_depth=args.max_depth, max_nodes=args.max_nodes)
    if args.dot:
        print(report.to_dot())
    else:
        _print_json(report.to_json_dict())
    return EXIT_OK


def cmd_gallery(args) -> int:
    report = run_gallery(args.filter)
    if args.json:
        _print_json(report.to_json_dict())
    else:
        for line in report.format_lines():
            print(line)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_serve(args) -> int:
    httpd = make_server(args.port)
    host, port = httpd.server_address[:2]
    print("serving on http://%s:%d" % (host, port), file=sys.stderr)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# HTTP service


class _ApiError(Exception):
    """Carries an HTTP status and the error envelope for the response."""

    def __init__(self, status: int, code: str, message: str, detail=None):
        super().__init__(message)
        self.status = status
        self.envelope = {"code": code, "message": message, "detail": detail}


def _need(body: dict, field: str):
    if field not in body:
        raise _ApiError(400, "missing-field", "request body needs %r" % field)
    return body[field]


def _body_quiver(body) -> IceQuiver:
    return IceQuiver.from_json_dict(_need(body, "quiver"))


def _body_point(body) -> ModelPoint:
    return ModelPoint.from_json_dict(_need(body, "point"))


def _body_word(body, q: IceQuiver):
    word = body.get("word", [])
    if not isinstance(word, list) or not all(isinstance(k, int) for k in word):
        raise _ApiError(400, "bad-word", "word must be a list of integers")
    out = []
    for k in word:
        if not 1 <= k <= q.n:
            raise _ApiError(400, "bad-word", "word entry %d out of range" % k)
        out.append(k - 1)
    return tuple(out)


def _api_mutate(body) -> dict:
    q = _body_quiver(body)
    k = _need(body, "k")
    if not isinstance(k, int) or not 1 <= k <= q.n:
        raise _ApiError(400, "bad-vertex", "k must be a mutable vertex index")
    return q.mutate(k - 1).to_json_dict()


def _api_classify(body) -> dict:
    return quiver_report(_body_quiver(body))


def _api_dilation(body) -> dict:
    return dilation_group(_body_quiver(body)).to_json_dict()


def _api_stabilizer(body) -> dict:
    q = _body_quiver(body)
    pt = _body_point(body)
    validate_point(q, pt)
    freeze = body.get("freeze", [])
    if not isinstance(freeze, list) or not all(isinstance(k, int) for k in freeze):
        raise _ApiError(400, "bad-freeze", "freeze must be a list of integers")
    # indices refer to the request quiver; freezing from the largest down
    # keeps the remaining ones meaningful
    for k in sorted(set(freeze), reverse=True):
        if not 1 <= k <= q.n:
            raise _ApiError(400, "bad-freeze", "freeze entry %d out of range" % k)
        q, pt = freeze_point(q, pt, k - 1)
    return stabilizer(q, pt).to_json_dict()


def _api_validate(body) -> dict:
    q = _body_quiver(body)
    pt = _body_point(body)
    errors = point_errors(q, pt)
    return {"valid": not errors, "errors": errors}


def _api_propagate(body) -> dict:
    q = _body_quiver(body)
    pt = _body_point(body)
    word = _body_word(body, q)
    validate_point(q, pt)
    witnesses = [
        Witness.from_json_dict(doc, q) for doc in body.get("witnesses", [])
    ]
    degree = body.get("solve_degree", 2)
    if not isinstance(degree, int) or degree < 1:
        raise _ApiError(400, "bad-degree", "solve_degree must be a positive integer")
    chart = propagate(
        q,
        pt,
        word,
        witnesses=witnesses,
        auto_solve=bool(body.get("auto_solve", False)),
        solve_degree=degree,
    )
    return chart.to_json_dict()


def _api_deep_check(body) -> dict:
    q = _body_quiver(body)
    pt = _body_point(body)
    cert = None
    kind = body.get("cert")
    if kind is not None:
        cap = body.get("max_nodes", 200)
        if not isinstance(cap, int) or cap < 1:
            raise _ApiError(400, "bad-cap", "max_nodes must be a positive integer")
        cert = build_certificate(q, kind, cap)
    return is_mysterious(q, pt, cert=cert).to_json_dict()


def _api_tree_cover(body) -> dict:
    q = _body_quiver(body)
    pt = _body_point(body)
    return tree_cover(q, pt).to_json_dict()


def _api_gallery(query: str) -> dict:
    return run_gallery(query or None).to_json_dict()


_POST_ROUTES = {
    "/api/quiver/mutate": _api_mutate,
    "/api/quiver/classify": _api_classify,
    "/api/dilation": _api_dilation,
    "/api/stabilizer": _api_stabilizer,
    "/api/point/validate": _api_validate,
    "/api/point/propagate": _api_propagate,
    "/api/deep/check": _api_deep_check,
    "/api/tree-cover": _api_tree_cover,
}


class _Handler(BaseHTTPRequestHandler):
    def log_message(self, format, *args):
        pass

    def _send(self, status: int, payload) -> None:
        data = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self):
        path, _, query = self.path.partition("?")
        if path != "/api/gallery":
            self._send(404, {"code": "not-found", "message": "unknown path", "detail": path})
            return
        filt = ""
        for piece in query.split("&"):
            if piece.startswith("filter="):
                filt = piece[len("filter="):]
        self._send(200, _api_gallery(filt))

    def do_POST(self):
        handler = _POST_ROUTES.get(self.path)
        if handler is None:
            self._send(404, {"code": "not-found", "message": "unknown path", "detail": self.path})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            body = json.loads(raw.decode() or "{}")
            if not isinstance(body, dict):
                raise _ApiError(400, "bad-body", "request body must be a JSON object")
            payload = handler(body)
        except _ApiError as exc:
            self._send(exc.status, exc.envelope)
        except json.JSONDecodeError as exc:
            self._send(400, {"code": "bad-json", "message": str(exc), "detail": None})
        except _CAP_ERRORS as exc:
            self._send(
                400,
                {"code": "resource-cap", "message": str(exc), "detail": type(exc).__name__},
            )
        except _INPUT_ERRORS as exc:
            self._send(
                400,
                {"code": type(exc).__name__, "message": str(exc), "detail": None},
            )
        except ClusterDeepError as exc:
            self._send(
                500,
                {"code": type(exc).__name__, "message": str(exc), "detail": None},
            )
        else:
            self._send(200, payload)


def make_server(port: int) -> ThreadingHTTPServer:
    return ThreadingHTTPServer(("127.0.0.1", port), _Handler)


def serve(port: int) -> None:
    """Serve the JSON API until interrupted."""
    cmd_serve(argparse.Namespace(port=port))


# ---------------------------------------------------------------------------
# argument wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterdeep",
        description="Deep point analysis on ice quivers: classify, certify, cover.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_quiver(p):
        p.add_argument("--quiver", required=True, metavar="FILE", help="quiver JSON file")

    def add_point(p):
        p.add_argument("--point", required=True, metavar="FILE", help="point JSON file")

    def add_cert(p):
        p.add_argument(
            "--cert",
            choices=["gcd-star", "key", "abundant", "fork"],
            help="certificate kind to build (default: first that applies)",
        )
        p.add_argument(
            "--max-nodes",
            type=int,
            default=200,
            help="exploration cap for fork certificates",
        )

    p = sub.add_parser("classify", help="shape and divisibility facts for a quiver")
    add_quiver(p)
    p.add_argument("--word", help="one-based mutation word applied first, e.g. 1,2,1")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("deep-check", help="certificate-based deepness check")
    add_quiver(p)
    add_point(p)
    add_cert(p)
    p.set_defaults(func=cmd_deep_check)

    p = sub.add_parser("mysterious-check", help="deep with trivial stabilizer?")
    add_quiver(p)
    add_point(p)
    add_cert(p)
    p.set_defaults(func=cmd_mysterious_check)

    p = sub.add_parser("tree-cover", help="covering loop on a reduced tree form")
    add_quiver(p)
    add_point(p)
    p.set_defaults(func=cmd_tree_cover)

    p = sub.add_parser("star3", help="family verdict for the two-leaf star")
    p.add_argument("a", type=int, help="first leaf weight")
    p.add_argument("b", type=int, help="second leaf weight")
    p.set_defaults(func=cmd_star3)

    p = sub.add_parser("explore", help="bounded mutation-graph search")
    add_quiver(p)
    p.add_argument("--max-depth", type=int, default=6)
    p.add_argument("--max-nodes", type=int, default=500)
    p.add_argument("--level", choices=["quiver", "seed"], default="quiver")
    p.add_argument("--dot", action="store_true", help="emit Graphviz instead of JSON")
    p.add_argument("--forkless", action="store_true", help="list the fork-less part")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("gallery", help="run the pinned example table")
    p.add_argument("filter", nargs="?", help="only entries whose id contains this")
    p.add_argument("--json", action="store_true", help="full JSON report")
    p.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for randomized entries (current entries are deterministic)",
    )
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("serve", help="JSON API over HTTP for the browser UI")
    p.add_argument("--port", type=int, default=8765)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CAP_ERRORS as exc:
        print(
            json.dumps({"error": {"code": "resource-cap", "message": str(exc)}}),
            file=sys.stderr,
        )
        return EXIT_CAP
    except _INPUT_ERRORS as exc:
        print(
            json.dumps(
                {"error": {"code": type(exc).__name__, "message": str(exc)}}
            ),
            file=sys.stderr,
        )
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
