#!/usr/bin/env python3
"""Generates the bundled 100-course fixture.

The corpus is synthetic. Attributes are spread over the courses with a fixed
seed so that corpus totals land on a fixed set of target figures.

Writes courses.jsonl, search_results.jsonl and probe_script.json into the
output directory (default: data/fixture next to the repository root).
"""

import argparse
import json
import math
import pathlib
import random

SEED = 2014
N = 100

REPOSITORIES = [
    ("webcast.berkeley", "webcast.berkeley.edu"),
    ("Connexions", "cnx.org"),
    ("Curriki", "www.curriki.org"),
    ("JISC Digital Media", "www.jiscdigitalmedia.ac.uk"),
    ("Jorum", "www.jorum.ac.uk"),
    ("Mellon OLI", "oli.cmu.edu"),
    ("MERLOT", "www.merlot.org"),
    ("MIT OpenCourseWare", "ocw.mit.edu"),
    ("OCWFinder", "www.ocwfinder.org"),
    ("OER Commons", "www.oercommons.org"),
    ("OER Dynamic Search Engine", "edtechpost.wikispaces.com"),
    ("OpenCourseware Consortium", "www.ocwconsortium.org"),
    ("OpenHPI", "open.hpi.de"),
    ("Temoa", "www.temoa.info"),
    ("The UNESCO OER Toolkit", "oerwiki.iiep.unesco.org"),
    ("TuDelft OpenCourseWare", "ocw.tudelft.nl"),
    ("UCIRVINE", "ocw.uci.edu"),
    ("University Learning", "www.google.com"),
    ("Utah State OpenCourseWare", "ocw.usu.edu"),
    ("Xpert", "xpert.nottingham.ac.uk"),
]
OPENHPI = 12

SUBJECTS = [
    "Algorithms", "Linear Algebra", "Organic Chemistry", "Microeconomics", "Thermodynamics",
    "Cell Biology", "Signal Processing", "Databases", "Probability", "World History",
    "Fluid Mechanics", "Machine Learning", "Philosophy of Mind", "Statistics", "Genetics",
    "Operating Systems", "Urban Planning", "Quantum Physics", "Music Theory", "Ecology",
    "Computer Networks", "Macroeconomics", "Semantic Web", "Calculus", "Public Health",
]
PREFIXES = ["Introduction to", "Foundations of", "Topics in", "Principles of"]


def tri(v):
    return "unspecified" if v is None else v


def license_for(kind):
    cc = {
        "CC-BY-NC-SA": (True, True, True, False),
        "CC-BY-NC": (True, False, True, False),
        "CC-BY-ND": (True, False, False, True),
        "CC-BY": (True, False, False, False),
        "CC-BY-SA": (True, True, False, False),
    }
    if kind in cc:
        by, sa, nc, nd = cc[kind]
        return {"present": True, "human_readable": True, "by": by, "sa": sa, "nc": nc, "nd": nd,
                "machine_readable_indication": False, "machine_readable_description": False,
                "label": kind}
    if kind in ("GFDL", "MIT", "CC0"):
        return {"present": True, "human_readable": True, "by": kind != "CC0", "sa": kind == "GFDL",
                "nc": False, "nd": False, "machine_readable_indication": False,
                "machine_readable_description": False, "label": kind}
    # repository-specific terms; conditions are not stated
    return {"present": True, "human_readable": True, "by": tri(None), "sa": tri(None),
            "nc": tri(None), "nd": tri(None), "machine_readable_indication": False,
            "machine_readable_description": False, "label": kind}


def fmt(name, **kw):
    entry = {"format": name, "reusable": False, "reuse_function": "none",
             "downloadable_whole": False, "downloadable_parts": False,
             "viewer_all_os": True, "lossless_all_os": True, "free_viewer_all_os": True,
             "structured_granularity": False}
    if name == "powerpoint":
        entry.update(lossless_all_os=False, free_viewer_all_os=False)
    entry.update(kw)
    return entry


def split(total, parts, rng, minimum=0):
    """Random composition of `total` into `parts` values >= minimum."""
    base = [minimum] * parts
    for _ in range(total - minimum * parts):
        base[rng.randrange(parts)] += 1
    return base


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[2] / "data" / "fixture"))
    args = ap.parse_args()
    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    rng = random.Random(SEED)
    ids = list(range(N))

    def pick(pool, k):
        chosen = rng.sample(sorted(pool), k)
        return set(chosen)

    courses = []
    for i in ids:
        repo, host = REPOSITORIES[i // 5]
        title = f"{PREFIXES[i % 4]} {SUBJECTS[i // 4]}"
        slug = title.lower().replace(" ", "-")
        courses.append({
            "id": f"ocw-{i + 1:03d}",
            "title": title,
            "repository": repo,
            "url": f"http://{host}/courses/{slug}",
            "link_broken": False,
        })

    # --- formats -----------------------------------------------------------
    rest = [i for i in ids if i != 0]
    rng.shuffle(rest)
    group_a = set(rest[:52])                  # PDF, copy-paste reuse
    group_b = set(rest[52:68])                # editable non-PDF formats
    video_only = set(rest[68:87]) | {0}
    interactive = set(rest[87:96])
    audio = set(rest[96:98])
    simulation = set(rest[98:99])
    assert len(video_only) == 20

    video_a = pick(group_a, 12)
    video_b = pick(group_b, 5)
    ppt_a = pick(group_a, 4)
    ppt_b = pick(group_b, 4)
    videos = video_a | video_b | video_only
    captioned = pick(videos, 18)

    editable = group_a | group_b
    parts = pick(editable, 40)
    both = pick(parts, 4)
    whole_only = pick(editable - parts, 18)
    toc = pick(whole_only, 10)
    whole = whole_only | both

    b_kinds = ["html", "epub", "latex", "plain-text", "xml"]
    for i in ids:
        c = courses[i]
        dl = {"downloadable_whole": i in whole, "downloadable_parts": i in parts,
              "structured_granularity": i in parts or i in toc}
        entries = []
        if i in group_a:
            entries.append(fmt("pdf", reusable=True, reuse_function="copy-paste", **dl))
            if i in ppt_a:
                entries.append(fmt("powerpoint", reusable=True, reuse_function="direct-edit"))
        elif i in group_b:
            if i in ppt_b:
                entries.append(fmt("powerpoint", reusable=True, reuse_function="direct-edit", **dl))
            else:
                entries.append(fmt(b_kinds[i % len(b_kinds)], reusable=True,
                                   reuse_function="direct-edit", **dl))
        elif i in interactive:
            entries.append(fmt("interactive"))
        elif i in audio:
            entries.append(fmt("audio"))
        elif i in simulation:
            entries.append(fmt("simulation"))
        if i in videos:
            entries.append(fmt("video", closed_captions=i in captioned))
        c["formats"] = entries

    # --- licenses ----------------------------------------------------------
    openhpi = [i for i in ids if i // 5 == OPENHPI]
    honor = set(openhpi[:4])
    kinds = (["CC-BY-NC-SA"] * 50 + ["CC-BY-NC"] * 7 + ["CC-BY-ND"] * 3 + ["CC-BY"] * 15 +
             ["CC-BY-SA"] * 10 + ["GFDL", "MIT", "CC0"] + ["Terms of Use"] * 8)
    rng.shuffle(kinds)
    others = [i for i in ids if i not in honor]
    for i, kind in zip(others, kinds):
        courses[i]["license"] = license_for(kind)
    for i in honor:
        courses[i]["license"] = license_for("Code of Honor")
    cc_courses = [i for i in ids if courses[i]["license"]["label"].startswith("CC-")]
    for i in pick(cc_courses, 20):
        courses[i]["license"]["machine_readable_indication"] = True
        courses[i]["license"]["machine_readable_description"] = True

    # --- languages ---------------------------------------------------------
    langs = ["es"] * 4 + ["zh", "ja", "pt", "de", "fr", "it", "nl", "fa"]
    non_english = pick(rest, 12)
    for i in ids:
        courses[i]["original_language"] = "en"
        courses[i]["translations"] = []
    for i, lang in zip(sorted(non_english), langs):
        courses[i]["original_language"] = lang
    for i in pick(non_english, 4):
        courses[i]["translations"] = [{"language": "en", "state": "unspecified"}]
    english = [i for i in ids if i not in non_english]
    for i, lang in zip(sorted(pick(english, 2)), ["es", "zh"]):
        courses[i]["translations"] = [{"language": lang, "state": "unspecified"}]

    # --- recency and revisions --------------------------------------------
    unknown_update = set(interactive) | pick(video_only - {0}, 2)
    known = [i for i in ids if i not in unknown_update]
    revision_courses = [0] + sorted(pick(set(known) - {0}, 13))
    histories = [
        [f"{y}-01-15" for y in range(2008, 2015)],                        # 7, regular
        [f"{y}-03-01" for y in range(2010, 2015)],                        # 5, regular
        [f"{y}-09-01" for y in range(2009, 2014)],                        # 5, regular
        ["2011-02-10", "2012-06-20"],
        ["2010-04-01", "2011-10-01"],
        ["2011-01-20", "2011-05-03", "2011-11-28"],                       # single year
        ["2012-03-05", "2012-08-14"],
        ["2010-02-01", "2010-03-15", "2010-10-30"],
        ["2009-01-12", "2009-02-02", "2009-06-30", "2009-12-01"],
        ["2008-01-10", "2008-06-01", "2011-03-01", "2014-09-15"],
        ["2010-05-05", "2012-01-09", "2012-04-18", "2013-11-02"],
        ["2006-09-01", "2009-09-01", "2010-02-01", "2012-07-07"],
        ["2007-03-03", "2007-12-24", "2010-06-06", "2011-08-08"],
        ["2005-10-10", "2008-02-02", "2008-03-03", "2010-12-12"],
    ]
    year_pool = ([2014] * 10 + [2013] * 12 + [2012] * 10 + [2011] * 14 + [2010] * 13 +
                 [2009] * 11 + [2008] * 9 + [2007] * 6 + [2006] * 4)
    assert len(year_pool) == len(known)
    for i, hist in zip(revision_courses, histories):
        year = int(hist[-1][:4])
        year_pool.remove(year)
        courses[i]["last_updated"] = year
        courses[i]["revisions"] = {"available": True, "timestamps": hist}
    rng.shuffle(year_pool)
    for i, year in zip([i for i in known if i not in revision_courses], year_pool):
        courses[i]["last_updated"] = year
    for i in ids:
        courses[i].setdefault("revisions", {"available": False, "timestamps": []})

    # --- modules, self-assessment, examples --------------------------------
    with_sa = pick(ids, 55)
    separate = pick(with_sa, 40)
    with_solutions = pick(with_sa, 25)

    has_both = pick(ids, 65)
    many_examples = pick(has_both, 25)
    # objective band: by illustrations per unit
    obj_high = pick(has_both, 20)
    obj_medium = pick(has_both - obj_high, 20)
    obj_low_both = has_both - obj_high - obj_medium
    obj_low = (set(ids) - has_both) | obj_low_both
    assert len(obj_low) == 60
    subjective = {}
    for column, counts in ((obj_high, (10, 6, 4)), (obj_medium, (6, 8, 6)), (obj_low, (4, 14, 42))):
        members = sorted(column)
        rng.shuffle(members)
        levels = ["high"] * counts[0] + ["medium"] * counts[1] + ["low"] * counts[2]
        for i, level in zip(members, levels):
            subjective[i] = level

    for i in ids:
        c = courses[i]
        n_modules = rng.randint(4, 10)
        units = [rng.randint(2, 8) for _ in range(n_modules)]
        total_units = sum(units)
        if i in obj_high:
            illustrations = rng.randint(total_units, 2 * total_units)
        elif i in obj_medium:
            illustrations = rng.randint(math.ceil(total_units / 2), total_units - 1)
        elif i in obj_low_both:
            illustrations = rng.randint(1, (total_units - 1) // 2)
        else:
            illustrations = 0
        if i in many_examples:
            examples = rng.randint(51, 150)
        elif i in has_both:
            examples = rng.randint(1, 50)
        else:
            examples = rng.randint(0, 20)
        ex = split(examples, n_modules, rng)
        il = split(illustrations, n_modules, rng)

        sa = [0] * n_modules
        sol = [0] * n_modules
        if i in with_sa:
            covered = rng.sample(range(n_modules), rng.randint(1, n_modules))
            for m in covered:
                sa[m] = rng.randint(1, 12)
            if i in with_solutions:
                for m in covered:
                    sol[m] = rng.randint(1, sa[m]) if rng.random() < 0.7 else 0
                if sum(sol) == 0:
                    sol[covered[0]] = sa[covered[0]]
            c["self_assessment_placement"] = "separate" if i in separate else "inline"
        c["modules"] = [
            {"title": f"Module {m + 1}", "unit_count": units[m], "sa_count": sa[m],
             "sa_with_solutions_count": sol[m], "example_count": ex[m],
             "illustration_count": il[m]}
            for m in range(n_modules)
        ]
        c["attractiveness_annotation"] = subjective[i]

    for i in sorted(pick([i for i in known if i not in revision_courses], 2)):
        c = courses[i]
        last = c["last_updated"]
        c["unit_update_years"] = [
            {"module_index": m, "unit_index": u, "year": last - ((m + u) % 3)}
            for m in range(min(2, len(c["modules"])))
            for u in range(c["modules"][m]["unit_count"])
        ]
        c["unit_update_years"][0]["year"] = last

    # --- community ---------------------------------------------------------
    single = pick(ids, 61)
    collaborative = pick(set(ids) - single, 16)
    contributors = [2] * 6 + [3] * 3 + [4] * 3 + [5] * 2 + [6, 7]
    rng.shuffle(contributors)
    contributor_of = dict(zip(sorted(collaborative), contributors))
    single_counted = pick(single, 40)
    reviewed = pick(ids, 7)
    for i in ids:
        community = {}
        if i in single:
            community["creation_type"] = "single-author"
            if i in single_counted:
                community["contributor_count"] = 1
        elif i in collaborative:
            community["creation_type"] = "collaborative"
            community["contributor_count"] = contributor_of[i]
        else:
            community["creation_type"] = "unknown"
        if i in reviewed:
            community["user_count"] = rng.randint(3, 400)
        courses[i]["community"] = community

    # --- availability probes -----------------------------------------------
    down2 = pick(ids, 5)
    down3 = pick(down2, 2)
    stamps = ["2014-10-01T00:00:00Z", "2014-10-31T00:00:00Z", "2014-11-30T00:00:00Z"]
    script = {}
    for i in ids:
        ups = [True, i not in down2, i not in down3]
        samples = []
        for ts, up in zip(stamps, ups):
            s = {"timestamp": ts, "server_up": up}
            if up:
                s["material_present"] = True
            samples.append(s)
        courses[i]["probe_log"] = {"samples": samples}
        script[courses[i]["url"]] = ["up" if up else "down" for up in ups]

    # --- discoverability ---------------------------------------------------
    order = ids[:]
    rng.shuffle(order)
    plan = {}
    buckets = [("rank1", 14), ("rank2", 7), ("rank3", 4), ("rank4to100", 7), ("above100", 68)]
    pos = 0
    for name, k in buckets:
        for j, i in enumerate(order[pos:pos + k]):
            if name == "rank1":
                plan[i] = (1, 1)
            elif name == "rank2":
                plan[i] = (2, 2) if j % 2 else (1, 3)
            elif name == "rank3":
                plan[i] = (3, 3) if j % 2 else (2, 4)
            elif name == "rank4to100":
                plan[i] = [(4, 6), (9, 9), (14, 14), (20, 34), (43, 43), (71, 71), (60, 100)][j]
            else:
                plan[i] = None
        pos += k
    assert pos == N

    def variant(url, k):
        if k % 4 == 1:
            return url + "/"
        if k % 4 == 2:
            return url.replace("http://", "https://", 1)
        if k % 4 == 3:
            scheme, rest_ = url.split("://", 1)
            host, path = rest_.split("/", 1)
            return f"{scheme}://{host.upper()}/{path}"
        return url

    search_lines = []
    filler_no = 0

    def fillers(k):
        nonlocal filler_no
        out = []
        for _ in range(k):
            filler_no += 1
            out.append(f"http://search.example.net/r/{filler_no}")
        return out

    for i in ids:
        c = courses[i]
        base = c["title"].lower()
        queries = [base, base + " course", base + " open course"]
        ranks = [None, None, None] if plan[i] is None else [None, plan[i][0], plan[i][1]]
        observed = []
        for q, r in zip(queries, ranks):
            if r is None:
                results = fillers(10)
                observed.append({"query": q, "rank": "not-in-top-100"})
            else:
                results = fillers(max(r, 10))
                results[r - 1] = variant(c["url"], i)
                observed.append({"query": q, "rank": r})
            search_lines.append({"query": q, "results": results})
        c["search_observation"] = {"queries": observed, "cutoff": 100}

    field_order = ["id", "title", "repository", "url", "link_broken", "original_language",
                   "translations", "license", "formats", "modules", "last_updated",
                   "unit_update_years", "revisions", "community", "probe_log",
                   "search_observation", "attractiveness_annotation", "self_assessment_placement"]
    with open(out_dir / "courses.jsonl", "w") as f:
        for c in courses:
            ordered = {k: c[k] for k in field_order if k in c}
            f.write(json.dumps(ordered, separators=(",", ":")) + "\n")
    with open(out_dir / "search_results.jsonl", "w") as f:
        for line in search_lines:
            f.write(json.dumps(line, separators=(",", ":")) + "\n")
    with open(out_dir / "probe_script.json", "w") as f:
        json.dump(script, f, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
