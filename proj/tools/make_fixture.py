#!/usr/bin/env python3
# Copyright 2026 The bugaug Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the synthetic bug corpus used by the tests and the README demo.

The output is fully determined by --seed. It contains Java-flavoured bug
reports (observed/expected behaviour, reproduction steps, stack traces and
code snippets), unified diffs for inducing, fixing and unrelated changesets,
and the links between them. A few reports are closed as wont_fix or
not_a_bug, and one bug's fix touches none of its inducing classes, so the
filtering paths are exercised too.
"""

import argparse
import json
import pathlib
import random
from datetime import datetime, timedelta, timezone

PACKAGES = [
    "org/example/net", "org/example/http", "org/example/session",
    "org/example/core", "org/example/util", "org/example/jdbc",
]
CLASSES = [
    "AsyncContext", "NioEndpoint", "Http11Processor", "SessionManager",
    "ConnectionPool", "RequestFacade", "ResponseWriter", "CookieParser",
    "HeaderMap", "StandardWrapper", "FilterChain", "CoyoteAdapter",
    "SocketWrapper", "TimeoutHandler", "ThreadPool", "CacheEntry",
    "ResourceLoader", "ConfigReader", "MimeMapper", "AccessLog",
    "RealmBase", "DigestAuth", "ByteChunk", "CharConverter",
    "UrlDecoder", "ParameterMap", "ClusterNode", "Replicator",
    "JdbcStore", "StatementCache", "PooledConnection", "QueryRunner",
]
VERBS = ["read", "write", "close", "open", "dispatch", "process", "recycle",
         "register", "parse", "flush", "lookup", "validate", "reset", "start"]
NOUNS = ["Buffer", "Request", "Session", "Timeout", "Header", "Socket",
         "Entry", "Pool", "Stream", "Context", "Listener", "Value"]
SYMPTOMS = ["does not time out", "hangs forever", "throws an exception",
            "fails to release the connection", "returns a stale value",
            "crashes during shutdown", "leaks memory", "ignores the header"]
EXCEPTIONS = ["java.lang.NullPointerException", "java.lang.IllegalStateException",
              "java.io.IOException", "java.util.ConcurrentModificationException",
              "java.lang.IndexOutOfBoundsException"]


def method_name(rng):
    return rng.choice(VERBS) + rng.choice(NOUNS)


def java_path(cls):
    pkg = PACKAGES[CLASSES.index(cls) % len(PACKAGES)]
    return f"java/{pkg}/{cls}.java"


def qualified(cls):
    pkg = PACKAGES[CLASSES.index(cls) % len(PACKAGES)]
    return pkg.replace("/", ".") + "." + cls


def hunk_text(rng, cls, added):
    """One hunk body with a consistent header; added method names go to `added`."""
    start = rng.randint(10, 400)
    lines = []
    for _ in range(rng.randint(1, 2)):
        lines.append(" " + f"    private final {rng.choice(NOUNS)} {rng.choice(NOUNS).lower()};")
    for _ in range(rng.randint(1, 3)):
        lines.append("-" + f"        {method_name(rng)}({rng.choice(NOUNS).lower()});")
    for _ in range(rng.randint(1, 4)):
        m = method_name(rng)
        added.append(m)
        lines.append("+" + f"        if ({rng.choice(NOUNS).lower()} != null) {{ {m}(); }}")
    lines.append(" " + "    }")
    old_len = sum(1 for l in lines if l[0] in " -")
    new_len = sum(1 for l in lines if l[0] in " +")
    header = f"@@ -{start},{old_len} +{start},{new_len} @@ public class {cls} {{"
    return [header] + lines


def diff_text(rng, classes, added):
    out = []
    for cls in classes:
        path = java_path(cls)
        out.append(f"diff --git a/{path} b/{path}")
        out.append(f"--- a/{path}")
        out.append(f"+++ b/{path}")
        for _ in range(rng.randint(1, 3)):
            out.extend(hunk_text(rng, cls, added))
    return "\n".join(out) + "\n"


def stack_trace(rng, classes, methods):
    exc = rng.choice(EXCEPTIONS)
    lines = [f"{exc}: {rng.choice(NOUNS).lower()} is null"]
    for cls in classes:
        for _ in range(rng.randint(1, 2)):
            lines.append(f"\tat {qualified(cls)}.{rng.choice(methods)}({cls}.java:{rng.randint(20, 900)})")
    lines.append(f"\tat java.util.concurrent.ThreadPoolExecutor.runWorker(ThreadPoolExecutor.java:1149)")
    lines.append(f"\tat java.lang.Thread.run(Thread.java:748)")
    return "\n".join(lines)


def code_snippet(rng, cls, methods):
    var = cls[0].lower() + cls[1:]
    return "\n".join([
        f"{cls} {var} = new {cls}();",
        f"{var}.{rng.choice(methods)}();",
        f"{var}.{method_name(rng)}({rng.randint(1, 9)});",
    ])


def bug_report(rng, bug_id, classes, methods, opened):
    main = classes[0]
    method = rng.choice(methods)
    symptom = rng.choice(SYMPTOMS)
    summary = f"{main}.{method}() {symptom} with {rng.choice(NOUNS)} {rng.choice(['enabled', 'disabled', 'configured'])}."
    paragraphs = [
        f"When the {rng.choice(NOUNS).lower()} is recycled, {main} {symptom} and the "
        f"client does not receive a response.",
        f"It should {rng.choice(['close', 'release', 'reset'])} the {rng.choice(NOUNS).lower()} "
        f"instead of waiting for the next request.",
        f"Steps to reproduce: 1. start the server with {method}() enabled "
        f"2. send two requests 3. wait for the timeout.",
    ]
    if rng.random() < 0.6:
        paragraphs.append(stack_trace(rng, classes[: rng.randint(1, len(classes))], methods))
    if rng.random() < 0.5:
        paragraphs.append(code_snippet(rng, main, methods))
    if rng.random() < 0.4:
        paragraphs.append(f"The {rng.choice(NOUNS).lower()} is never released, so the pool is blocked.")
    head, tail = paragraphs[:1], paragraphs[1:]
    rng.shuffle(tail)
    return {
        "id": bug_id,
        "project": "fixture",
        "summary": summary,
        "description": "\n\n".join(head + tail),
        "opened_at": opened.strftime("%Y-%m-%dT%H:%M:%SZ"),
        "status": "fixed",
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", required=True, type=pathlib.Path)
    ap.add_argument("--bugs", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    diffs = args.out / "diffs"
    diffs.mkdir(parents=True, exist_ok=True)
    for old in diffs.glob("*.diff"):
        old.unlink()

    bugs, links, changesets = [], [], []
    when = datetime(2019, 3, 1, 9, 0, 0, tzinfo=timezone.utc)
    cs_counter = 0

    def new_changeset(classes, message, added=None):
        nonlocal cs_counter
        cs_counter += 1
        cs_id = f"c{cs_counter:04d}"
        (diffs / f"{cs_id}.diff").write_text(diff_text(rng, classes, added if added is not None else []))
        changesets.append({
            "id": cs_id,
            "author": rng.choice(["alice", "bob", "carol", "dan"]),
            "committed_at": (when - timedelta(days=rng.randint(5, 200))).strftime("%Y-%m-%dT%H:%M:%SZ"),
            "log_message": message,
        })
        return cs_id

    # A few heavy classes make the per-class distribution skewed.
    weights = [8 if i < 4 else 1 for i in range(len(CLASSES))]
    for n in range(1, args.bugs + 1):
        bug_id = f"BUG-{1000 + n}"
        k = rng.choice([1, 1, 2, 2, 3])
        classes = []
        while len(classes) < k:
            c = rng.choices(CLASSES, weights)[0]
            if c not in classes:
                classes.append(c)
        # Two reports share an opening time to exercise the id tie-break.
        if n != 2:
            when += timedelta(hours=rng.randint(3, 72))

        # Reports mention methods introduced by their inducing changesets.
        methods = []
        inducing = [new_changeset(classes, f"Refactor {classes[0]} handling", methods)]
        if rng.random() < 0.3:
            inducing.append(new_changeset(classes[:1], f"Tune {classes[0]} defaults", methods))
        bugs.append(bug_report(rng, bug_id, classes, methods, when))
        if n == 17:
            # Fix touches only an unrelated class: no surviving positive.
            fixed = [c for c in CLASSES if c not in classes][:1]
        else:
            fixed = classes[: max(1, len(classes) - rng.randint(0, 1))]
        fixing = [new_changeset(fixed, f"Fix {bug_id}: {classes[0]} {rng.choice(SYMPTOMS)}")]
        if n in (9, 31):
            bugs[-1]["status"] = "wont_fix"
        if n == 44:
            bugs[-1]["status"] = "not_a_bug"
        links.append({"bug_id": bug_id, "inducing_changeset_ids": inducing,
                      "fixing_changeset_ids": fixing})

    # Unrelated history enlarges the negative pool.
    for _ in range(20):
        new_changeset(rng.sample(CLASSES, rng.randint(1, 3)), "Housekeeping")

    def dump(path, rows):
        path.write_text("".join(json.dumps(r, sort_keys=True) + "\n" for r in rows))

    dump(args.out / "bugs.jsonl", bugs)
    dump(args.out / "links.jsonl", links)
    dump(diffs / "changesets.jsonl", changesets)


if __name__ == "__main__":
    main()
