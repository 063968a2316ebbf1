"""Command line client for the verification service.

By default every command runs against an in-process application; pass
--server to talk to a running instance instead.  Exit codes: 0 all
checks pass, 1 at least one check failed, 2 usage or IO error, 3 no
failures but at least one inconclusive record.
"""

import argparse
import json
import sys


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", required=True,
                        help="fixture name (a2, ex61, ex62) or JSON path")
    common.add_argument("--json", action="store_true",
                        help="emit the raw report as canonical JSON")
    common.add_argument("--server", metavar="URL",
                        help="send the request to a running service")
    common.add_argument("--seed", type=int, default=0)

    paired = argparse.ArgumentParser(add_help=False)
    paired.add_argument("--pair", required=True)

    duo = argparse.ArgumentParser(add_help=False)
    duo.add_argument("--from", dest="from_pair", required=True)
    duo.add_argument("--to", dest="to_pair", required=True)

    objs = argparse.ArgumentParser(add_help=False)
    objs.add_argument("objects", nargs="*",
                      help="module names; defaults to the whole catalog")

    parser = argparse.ArgumentParser(
        prog="quiverheart",
        description="hearts of cotorsion pairs: computation and checks")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check-algebra", parents=[common],
                   help="validate the algebra and every catalog module")
    sub.add_parser("check-pair", parents=[common, paired],
                   help="certify the cotorsion pair axioms")
    sub.add_parser("heart", parents=[common, paired],
                   help="list heart members and nonzero stable classes")
    p = sub.add_parser("h-of", parents=[common, paired],
                       help="value of the half exact functor on objects, "
                            "or on a Hom-basis with --from/--to modules")
    p.add_argument("--from", dest="from_pair")
    p.add_argument("--to", dest="to_pair")
    p.add_argument("objects", nargs="*")
    sub.add_parser("membership", parents=[common, paired, objs],
                   help="coreflective and reflective membership per object")
    p = sub.add_parser("verify-halfexact", parents=[common, paired],
                       help="half exactness on seeded random conflations")
    p.add_argument("--random", type=int, default=100, metavar="N")
    p = sub.add_parser("les", parents=[common, paired],
                       help="nine-term exactness windows on seeded "
                            "random conflations")
    p.add_argument("--random", type=int, default=25, metavar="N")
    p.add_argument("--depth", type=int, default=1,
                   help="iterate the window this many times per conflation")
    p = sub.add_parser("kernel-char", parents=[common, paired, objs],
                       help="vanishing of H against the membership oracle")
    p.add_argument("--oracle-cap", dest="oracle_cap", type=int)
    sub.add_parser("compare", parents=[common, duo],
                   help="restricted functor checks between two pairs")
    sub.add_parser("twin", parents=[common, duo],
                   help="certify and exercise a twin of cotorsion pairs")
    sub.add_parser("g-functor", parents=[common, paired, objs],
                   help="Ext-restriction module of each object")
    p = sub.add_parser("enumerate-pairs", parents=[common],
                       help="bounded search for certified cotorsion pairs")
    p.add_argument("--max-extra", dest="max_extra", type=int, default=2,
                   help="non-projective generators allowed in the aisle")
    return parser


def _body(args):
    body = {"workspace": args.workspace, "seed": args.seed}
    for key, alias in (("pair", "pair"), ("from_pair", "from"),
                       ("to_pair", "to"), ("objects", "objects"),
                       ("random", "random"), ("oracle_cap", "oracle_cap"),
                       ("depth", "depth"), ("max_extra", "max_extra")):
        value = getattr(args, key, None)
        if value not in (None, []):
            body[alias] = value
    return body


def _send(args, body):
    if args.server:
        import httpx
        return httpx.post(args.server.rstrip("/") + "/v1/" + args.command,
                          json=body, timeout=None)
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
    from .service import app
    with TestClient(app) as client:
        return client.post("/v1/" + args.command, json=body)


def render(report, as_json):
    if as_json:
        return json.dumps(report, sort_keys=True, separators=(",", ":"))
    lines = ["command: %s  workspace: %s  seed: %d"
             % (report["command"], report["workspace"], report["seed"])]
    for check in report["checks"]:
        line = "%s: %s" % (check["name"], check["status"].upper())
        wit = check["witnesses"]
        if wit:
            line += "  " + " ".join("%s=%s" % (k, json.dumps(wit[k]))
                                    for k in sorted(wit))
        lines.append(line)
    tally = {"pass": 0, "fail": 0, "inconclusive": 0}
    for check in report["checks"]:
        tally[check["status"]] += 1
    lines.append("%s (%d checks: %d pass, %d fail, %d inconclusive)"
                 % ("ok" if report["ok"] else "not ok", len(report["checks"]),
                    tally["pass"], tally["fail"], tally["inconclusive"]))
    return "\n".join(lines)


def exit_code(report):
    statuses = [c["status"] for c in report["checks"]]
    if "fail" in statuses:
        return 1
    if "inconclusive" in statuses:
        return 3
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        resp = _send(args, _body(args))
    except Exception as exc:
        print("transport error: %s" % exc, file=sys.stderr)
        return 2
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        print("error: %s" % detail, file=sys.stderr)
        return 2
    report = resp.json()
    print(render(report, args.json))
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
