#!/usr/bin/env python3
"""Fetch and convert the benchmark networks into the layout `score` reads.

Each dataset ends up as `<name>.gml` or `<name>.edges` + `<name>.labels`
inside the target directory (default: ./data, or $SCORE_DATA_DIR).

Checksums: every downloaded archive is hashed. The first successful fetch
records the digest in `<dir>/CHECKSUMS.sha256`; later fetches must match it
or the script stops. Pass --pin to compare against a checksum file you
trust instead.

    python3 scripts/fetch_datasets.py                  # everything reachable
    python3 scripts/fetch_datasets.py karate football  # a subset
"""

import argparse
import hashlib
import io
import os
import shutil
import subprocess
import sys
import tempfile
import urllib.request
import zipfile
from pathlib import Path

NEWMAN = "http://www-personal.umich.edu/~mejn/netdata/"
FACEBOOK100 = "https://archive.org/download/oxford-2005-facebook-matrix/facebook100.zip"
IGRAPHDATA = "https://cran.r-project.org/src/contrib/Archive/igraphdata/igraphdata_1.0.1.tar.gz"

# Facebook100 local_info columns: status, gender, major, minor, dorm, year, high school.
FB_COLUMN = {"simmons": ("Simmons81.mat", 5), "caltech": ("Caltech36.mat", 4)}

ALL = ["polblogs", "karate", "dolphins", "football", "polbooks", "ukfaculty", "simmons", "caltech"]


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class Checksums:
    def __init__(self, path: Path, pinned: Path | None):
        self.path = path
        self.known = {}
        for source in filter(None, [pinned, path]):
            if source.is_file():
                for line in source.read_text().splitlines():
                    if line.strip() and not line.startswith("#"):
                        digest, name = line.split(None, 1)
                        self.known.setdefault(name.strip(), digest)
        self.pinned_only = pinned is not None

    def verify(self, name: str, data: bytes) -> None:
        digest = sha256(data)
        want = self.known.get(name)
        if want is None:
            if self.pinned_only:
                raise SystemExit(f"{name}: no pinned checksum")
            print(f"  recording {name} sha256 {digest}")
            self.known[name] = digest
            with self.path.open("a") as f:
                f.write(f"{digest}  {name}\n")
        elif want != digest:
            raise SystemExit(f"{name}: checksum mismatch (got {digest}, expected {want})")


def download(url: str, sums: Checksums) -> bytes:
    print(f"  GET {url}")
    with urllib.request.urlopen(url, timeout=60) as r:
        data = r.read()
    sums.verify(url.rsplit("/", 1)[-1], data)
    return data


def newman_gml(name: str, out: Path, sums: Checksums) -> None:
    data = download(f"{NEWMAN}{name}.zip", sums)
    with zipfile.ZipFile(io.BytesIO(data)) as z:
        member = next(m for m in z.namelist() if m.endswith(".gml"))
        text = z.read(member).decode("utf-8", errors="replace")
    (out / f"{name}.gml").write_text(text)


def karate(out: Path, sums: Checksums) -> None:
    # networkx ships Zachary's network; member 9 is assigned to the
    # officer's side, matching the split used in the literature.
    import networkx as nx

    g = nx.karate_club_graph()
    edges = ["# Zachary karate club (1977), 34 members, 78 friendship ties"]
    edges += [f"{u + 1} {v + 1}" for u, v in sorted(tuple(sorted(e)) for e in g.edges())]
    labels = []
    for v in sorted(g.nodes()):
        club = "hi" if g.nodes[v]["club"] == "Mr. Hi" else "officer"
        if v + 1 == 9:
            club = "officer"
        labels.append(f"{v + 1}\t{club}")
    (out / "karate.edges").write_text("\n".join(edges) + "\n")
    (out / "karate.labels").write_text("\n".join(labels) + "\n")


def facebook(name: str, out: Path, sums: Checksums, cache: Path) -> None:
    import scipy.io

    archive = cache / "facebook100.zip"
    if archive.is_file():
        sums.verify("facebook100.zip", archive.read_bytes())
    else:
        archive.write_bytes(download(FACEBOOK100, sums))
    member, column = FB_COLUMN[name]
    with zipfile.ZipFile(archive) as z:
        path = next(m for m in z.namelist() if m.endswith(member))
        mat = scipy.io.loadmat(io.BytesIO(z.read(path)))
    a = mat["A"].tocoo()
    info = mat["local_info"]
    edges = [f"{i + 1} {j + 1}" for i, j in zip(a.row, a.col) if i < j]
    labels = [f"{i + 1}\t{int(info[i, column])}" for i in range(info.shape[0])]
    (out / f"{name}.edges").write_text("\n".join(edges) + "\n")
    (out / f"{name}.labels").write_text("\n".join(labels) + "\n")


def ukfaculty(out: Path, sums: Checksums) -> None:
    if shutil.which("Rscript") is None:
        raise RuntimeError("needs Rscript with the igraph package (see docs/DATASETS.md)")
    data = download(IGRAPHDATA, sums)
    with tempfile.TemporaryDirectory() as tmp:
        tarball = Path(tmp) / "igraphdata.tar.gz"
        tarball.write_bytes(data)
        script = f"""
            library(igraph)
            untar("{tarball}", exdir = "{tmp}")
            load(file.path("{tmp}", "igraphdata", "data", "UKfaculty.rda"))
            g <- as.undirected(UKfaculty, mode = "collapse")
            e <- as_edgelist(g, names = FALSE)
            write.table(e, "{out / 'ukfaculty.edges'}", row.names = FALSE, col.names = FALSE)
            write.table(data.frame(seq_len(vcount(g)), V(g)$Group), "{out / 'ukfaculty.labels'}",
                        sep = "\\t", row.names = FALSE, col.names = FALSE, quote = FALSE)
        """
        subprocess.run(["Rscript", "-e", script], check=True)


def main() -> int:
    default_dir = os.environ.get("SCORE_DATA_DIR", "data")
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("datasets", nargs="*", metavar="DATASET", help=", ".join(ALL))
    p.add_argument("--dir", type=Path, default=Path(default_dir))
    p.add_argument("--pin", type=Path, help="checksum file to verify against instead of recording")
    args = p.parse_args()
    unknown = set(args.datasets) - set(ALL)
    if unknown:
        p.error("unknown dataset: " + ", ".join(sorted(unknown)))

    out = args.dir
    out.mkdir(parents=True, exist_ok=True)
    sums = Checksums(out / "CHECKSUMS.sha256", args.pin)
    cache = out / ".cache"
    cache.mkdir(exist_ok=True)

    failed = []
    for name in args.datasets or ALL:
        print(name)
        try:
            if name == "karate":
                karate(out, sums)
            elif name in ("polblogs", "football", "polbooks", "dolphins"):
                newman_gml(name, out, sums)
                if name == "dolphins" and not (out / "dolphins.labels").is_file():
                    print("  note: dolphins.gml has no groups; supply dolphins.labels (see docs/DATASETS.md)")
            elif name in FB_COLUMN:
                facebook(name, out, sums, cache)
            elif name == "ukfaculty":
                ukfaculty(out, sums)
        except (OSError, RuntimeError, subprocess.CalledProcessError) as e:
            print(f"  failed: {e}")
            failed.append(name)
    if failed:
        print("not fetched: " + ", ".join(failed))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
