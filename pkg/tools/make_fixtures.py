#!/usr/bin/env python3
"""Regenerate the committed test fixtures.

Builds a 204-entry export deterministically (seeded), serializes it to both
interchange formats, and writes golden files straight from the construction
dicts. The goldens never pass through the production parser, so they stay
an independent statement of what parsing SHOULD produce:

    tests/fixtures/sample.tagged.txt   tagged_text export
    tests/fixtures/sample.tab.txt      tab_delimited twin (same records)
    tests/fixtures/golden_records.json expected parse result
    tests/fixtures/queries.txt         query script over planted markers
    tests/fixtures/golden_queries.json expected ids per script line
    tests/fixtures/planted.json        dedup/keyword plants for e2e tests

Run from the repository root: python3 tools/make_fixtures.py
"""

from __future__ import annotations

import json
import random
import re
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
SEED = 20260819
N_RECORDS = 204  # 201 survive parsing, 3 are planted drops/dupes

# Word pools deliberately exclude every marker token used by the query
# script (zugspitze, alpine, meadow, soil, thermo*, heat, budget,
# megadrought, percolation, theory).
TITLE_WORDS = (
    "climate urban model region summer winter trend analysis index variability "
    "projection scenario impact exposure city station record period event daily "
    "monthly extreme warming humidity drought rainfall synoptic circulation "
    "anomaly observed simulated coastal northern southern seasonal intensity "
    "duration frequency population density landscape surface canopy"
).split()

KEYWORD_POOL = [
    "heat wave",
    "climate change",
    "mortality",
    "urban heat island",
    "adaptation",
    "temperature",
    "air pollution",
    "vulnerability",
    "risk assessment",
    "global warming",
    "urbanization",
    "public health",
    "heat stress",
    "land use",
    "remote sensing",
]

CATEGORY_POOL = [
    "Meteorology & Atmospheric Sciences",
    "Environmental Sciences",
    "Public, Environmental & Occupational Health",
    "Geosciences, Multidisciplinary",
    "Physics, Applied",
]

SURNAMES = (
    "Anderson Bell Garcia Kim Mueller Rossi Tanaka Novak Silva Dubois OBrien "
    "Petrov Larsen Costa Haddad Olsen Weber Moreau Svensson Yamamoto"
).split()

# (address template, canonical country the parser should extract)
ADDRESSES = [
    ("Univ Colorado, Dept Geog, Boulder, CO 80309 USA", "USA"),
    ("Harvard Univ, Sch Publ Hlth, Boston, MA 02115 USA", "USA"),
    ("Tsinghua Univ, Dept Engn, Beijing 100084, Peoples R China", "PEOPLES R CHINA"),
    ("UCL, Inst Hlth Equ, London, England", "ENGLAND"),
    ("Univ Edinburgh, Sch Geosci, Edinburgh, Scotland", "SCOTLAND"),
    ("Potsdam Inst Climate Impact Res, Potsdam, Germany", "GERMANY"),
    ("Sorbonne Univ, CNRS, Paris, France", "FRANCE"),
    ("Univ Sydney, Sch Publ Hlth, Sydney, Australia", "AUSTRALIA"),
    ("Univ Toronto, Dept Phys, Toronto, ON, Canada", "CANADA"),
    ("Univ Complutense Madrid, Fac Med, Madrid, Spain", "SPAIN"),
    ("Univ Tokyo, Grad Sch Engn, Tokyo, Japan", "JAPAN"),
    ("Univ Utrecht, IMAU, Utrecht, Netherlands", "NETHERLANDS"),
    ("CMCC Fdn, Milan, Italy", "ITALY"),
    ("Seoul Natl Univ, Dept Geog, Seoul, South Korea", "SOUTH KOREA"),
    ("Stockholm Univ, Dept Phys Geog, Stockholm, Sweden", "SWEDEN"),
    ("Swiss Fed Inst Technol, Inst Atmospher & Climate Sci, Zurich, Switzerland", "SWITZERLAND"),
]

# Base cited-reference pool: (author, rpy, source, volume, page, doi, n_papers)
BASE_REFS = [
    ("MANLEY G", 1958, "Q J ROY METEOR SOC", "84", "70", None, 4),
    ("THOM EC", 1959, "WEATHERWISE", "12", "57", None, 5),
    ("LANDSBERG HE", 1981, "URBAN CLIMATE", None, None, None, 6),
    ("OKE TR", 1982, "Q J ROY METEOR SOC", "108", "1", "10.1002/qj.49710845502", 18),
    ("KARL TR", 1997, "B AM METEOROL SOC", "78", "1107", None, 7),
    ("ROBINSON PJ", 2001, "J APPL METEOROL", "40", "762", None, 9),
    ("MEEHL GA", 2004, "SCIENCE", "305", "994", "10.1126/science.1098704", 30),
    ("SCHAR C", 2004, "NATURE", "427", "332", "10.1038/nature02300", 24),
    ("STOTT PA", 2004, "NATURE", "432", "610", "10.1038/nature03089", 16),
    ("LUTERBACHER J", 2004, "SCIENCE", "303", "1499", None, 11),
    ("BENISTON M", 2004, "GEOPHYS RES LETT", "31", "L02202", None, 10),
    ("POUMADERE M", 2005, "RISK ANAL", "25", "1483", None, 8),
    ("GOSLING SN", 2009, "CLIMATIC CHANGE", "92", "299", "10.1007/s10584-008-9441-x", 12),
    ("ANDERSON GB", 2009, "EPIDEMIOLOGY", "20", "205", "10.1097/EDE.0b013e318190ee08", 14),
    ("ROBINE JM", 2008, "CR BIOL", "331", "171", "10.1016/j.crvi.2007.12.001", 19),
    ("FOUILLET A", 2006, "INT ARCH OCC ENV HEA", "80", "16", None, 10),
    ("VANDENTORREN S", 2006, "EUR J PUBLIC HEALTH", "16", "583", None, 7),
    ("GERSHUNOV A", 2009, "J CLIMATE", "22", "6181", None, 5),
    ("BARNETT AG", 2010, "ENVIRON RES", "110", "604", None, 8),
    ("HAJAT S", 2010, "ENVIRON HEALTH PERSP", "118", "75", None, 9),
    ("PERKINS SE", 2012, "GEOPHYS RES LETT", "39", "L20714", "10.1029/2012GL053361", 21),
    ("COUMOU D", 2012, "NAT CLIM CHANGE", "2", "491", "10.1038/nclimate1452", 17),
    ("HANSEN J", 2012, "P NATL ACAD SCI USA", "109", "E2415", "10.1073/pnas.1205276109", 13),
    ("FISCHER EM", 2015, "NAT CLIM CHANGE", "5", "560", "10.1038/nclimate2617", 15),
    ("MORA C", 2017, "NAT CLIM CHANGE", "7", "501", "10.1038/nclimate3322", 12),
    ("ZHAO L", 2014, "NATURE", "511", "216", "10.1038/nature13462", 8),
    ("PERKINS-KIRKPATRICK SE", 2017, "SCI REP-UK", "7", "12256", None, 7),
    ("VICEDO-CABRERA AM", 2018, "EPIDEMIOLOGY", "29", "748", None, 6),
    ("GUO YM", 2018, "PLOS MED", "15", "e1002629", "10.1371/journal.pmed.1002629", 9),
    ("EBI KL", 2019, "LANCET", "394", "129", None, 5),
    ("WATTS N", 2019, "LANCET", "394", "1836", None, 6),
    ("IPCC", 2013, "CLIMATE CHANGE 2013", None, None, None, 22),
    ("IPCC", 2014, "CLIMATE CHANGE 2014", None, None, None, 16),
    ("DOSIO A", 2018, "ENVIRON RES LETT", "13", "054006", None, 5),
    ("RUSSO S", 2014, "J GEOPHYS RES-ATMOS", "119", "12500", "10.1002/2014JD022098", 11),
    ("RUSSO S", 2015, "ENVIRON RES LETT", "10", "124003", "10.1088/1748-9326/10/12/124003", 9),
    ("BASU R", 2002, "EPIDEMIOL REV", "24", "190", None, 13),
    ("CURRIERO FC", 2002, "AM J EPIDEMIOL", "155", "80", None, 9),
    ("DAVIS RE", 2003, "ENVIRON HEALTH PERSP", "111", "1712", None, 6),
    ("SEMENZA JC", 1996, "NEW ENGL J MED", "335", "84", "10.1056/NEJM199607113350203", 15),
]

# Misspelling pairs for the dedup loop. Citing-paper overlap is the planted
# truth the merge-loop e2e predicts the spectrum from.
PAIR_KALKSTEIN = {
    "a": "KALKSTEIN LS, 1997, CLIMATE RES, V9, P37",
    "b": "KALKSTEIN L, 1997, CLIMAT RES, V9, P37",
    "rpy": 1997,
    "n_a": 8,
    "n_b": 5,
    "overlap": 2,
}
PAIR_SMOYER = {
    "a": "SMOYER KE, 1998, SOC SCI MED, V47, P1809",
    "b": "SMOYER K, 1998, SOC SCI MED, V47, P1809",
    "rpy": 1998,
    "n_a": 6,
    "n_b": 4,
    "overlap": 0,
}
PAIR_JONES = {
    "a": "JONES PD, 1999, REV GEOPHYS, V37, P173",
    "b": "JONES P, 1999, REV GEOPHYS, V37, P173",
    "rpy": 1999,
    "n_a": 7,
    "n_b": 6,
    "overlap": 3,
}
PAIRS = [PAIR_KALKSTEIN, PAIR_SMOYER, PAIR_JONES]

NO_YEAR_REF = "ANONYMOUS, IN PRESS, TECH REP HEAT PLANS"


def ref_string(author, rpy, source, volume, page, doi):
    parts = [author, str(rpy), source]
    if volume:
        parts.append(f"V{volume}")
    if page:
        parts.append(f"P{page}")
    if doi:
        parts.append(f"DOI {doi}")
    return ", ".join(parts)


def levenshtein(a: str, b: str) -> int:
    # independent reimplementation, used only for self-checking the plants
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[-1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


_KEY_STRIP = re.compile(r"[^0-9a-z ]+")


def compare_key(ref: str) -> str:
    segs = [s.strip() for s in ref.split(",")]
    author = segs[0] if segs else ""
    source = ""
    for seg in segs[1:]:
        if not re.match(r"^\d{4}$", seg) and re.search(r"[A-Za-z]", seg):
            source = seg
            break
    text = f"{author} {source}".lower()
    return re.sub(r"\s+", " ", _KEY_STRIP.sub("", text)).strip()


def linked(ref_a: str, ref_b: str, threshold: float = 0.75) -> bool:
    ka, kb = compare_key(ref_a), compare_key(ref_b)
    m = max(len(ka), len(kb))
    if m == 0:
        return True
    return levenshtein(ka, kb) <= int((1.0 - threshold) * m + 1e-9)


def norm_keyword(raw: str) -> str:
    return re.sub(r"\s+", " ", raw.strip()).lower()


def make_text(rng: random.Random, n_words: int, capitalize: bool = True) -> str:
    words = [rng.choice(TITLE_WORDS) for _ in range(n_words)]
    text = " ".join(words)
    return text[0].upper() + text[1:] if capitalize else text


def main() -> None:
    rng = random.Random(SEED)
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    # ---- logical records -------------------------------------------------
    records = []
    for i in range(N_RECORDS):
        surname = rng.choice(SURNAMES)
        n_auth = rng.randint(1, 4)
        authors = [f"{rng.choice(SURNAMES)}, {chr(65 + rng.randrange(26))}." for _ in range(n_auth)]
        authors[0] = f"{surname}, {chr(65 + rng.randrange(26))}."
        addr_picks = rng.sample(ADDRESSES, rng.randint(1, 3)) if rng.random() < 0.8 else []
        addresses, countries = [], set()
        for template, country in addr_picks:
            if rng.random() < 0.3:
                group = "; ".join(authors[: rng.randint(1, len(authors))])
                addresses.append(f"[{group}] {template}")
            else:
                addresses.append(template)
            countries.add(country)
        keywords = rng.sample(KEYWORD_POOL[4:], rng.randint(0, 3))
        categories = rng.sample(CATEGORY_POOL, rng.randint(1, 2))
        records.append(
            {
                "ut": f"WOS:{300000000 + i * 7919:012d}",
                "py": str(rng.choices(range(1998, 2021), weights=range(3, 26), k=1)[0]),
                "dt": ["Article"],
                "ti": make_text(rng, rng.randint(6, 10)),
                "ab": make_text(rng, rng.randint(25, 45)),
                "au": authors,
                "c1": addresses,
                "c1_countries": sorted(countries),
                "de": [],
                "id": keywords,
                "wc": categories,
                "cr": [],
                "di": f"10.{1000 + i}/fixture.{i:04d}" if rng.random() < 0.6 else None,
                "drop": None,
            }
        )

    # a few non-Article doc types in the background population
    for i in rng.sample(range(N_RECORDS), 30):
        records[i]["dt"] = [rng.choice(["Review", "Letter", "Editorial Material", "Article; Proceedings Paper"])]

    # ---- planted parse problems (the four sacrificial entries) -----------
    records[50]["ut"] = None  # synthesized id, record survives
    records[97]["py"] = "n/a"  # dropped: unparseable year
    records[98]["py"] = "1776"  # dropped: out of range
    records[99]["ut"] = records[10]["ut"]  # dropped: duplicate id
    records[97]["drop"] = "bad year"
    records[98]["drop"] = "year range"
    records[99]["drop"] = "duplicate"

    def record_id(idx: int) -> str:
        return records[idx]["ut"] or f"REC-{idx + 1:06d}"

    alive = [i for i in range(N_RECORDS) if records[i]["drop"] is None]

    # ---- query markers ----------------------------------------------------
    marks: dict[str, list[int]] = {}

    def plant(name: str, indices: list[int]):
        marks[name] = indices

    pick = rng.sample(alive, 60)  # disjoint planting slots
    slot = iter(pick)

    def take(n: int) -> list[int]:
        return [next(slot) for _ in range(n)]

    ti_zug = take(5)
    ab_zug = take(3)
    for years, idx_list in ((["2005", "2006", "2007", "2012", "2015"], ti_zug), (["1999", "2006", "2018"], ab_zug)):
        for year, idx in zip(years, idx_list):
            records[idx]["py"] = year
    for idx in ti_zug:
        records[idx]["ti"] += " under Zugspitze observation"
    for idx in ab_zug:
        records[idx]["ab"] += " Additional zugspitze station data were used."
    plant("zug_title", ti_zug)
    plant("zug_topic", ti_zug + ab_zug)

    phrase_ids = take(4)
    scattered_ids = take(6)
    for idx in phrase_ids:
        records[idx]["ab"] += " Results covered alpine meadow soil response in detail."
    for idx in scattered_ids:
        records[idx]["ab"] += " The alpine terrain near each meadow retained more soil moisture."
    plant("alpine_phrase", phrase_ids)
    plant("alpine_and", phrase_ids + scattered_ids)

    thermo = {"thermoregulation": take(3), "thermocline": take(2), "thermostat": take(2), "thermo": take(2)}
    for word, idx_list in thermo.items():
        for idx in idx_list:
            records[idx]["ab"] += f" A {word} effect was recorded."
    thermo_star = [i for ids in thermo.values() for i in ids]
    span_years = ["1998", "2001", "2004", "2006", "2009", "2010", "2011", "2014", "2017"]
    for year, idx in zip(span_years, thermo_star):
        records[idx]["py"] = year
    plant("thermo_star", thermo_star)
    plant("thermo_exact", thermo["thermo"])
    plant("thermo_2000s", [i for y, i in zip(span_years, thermo_star) if 2000 <= int(y) <= 2010])

    hyphen_ids = take(3)
    twoword_ids = take(2)
    for idx in hyphen_ids:
        records[idx]["ab"] += " The surface heat-budget closure improved."
    for idx in twoword_ids:
        records[idx]["ab"] += " The surface heat budget closure improved."
    plant("hyphen_term", hyphen_ids)
    plant("two_word_phrase", twoword_ids)

    mega_ids = take(6)
    perc_ids = take(4)
    for idx in mega_ids:
        records[idx]["id"] = records[idx]["id"] + ["Megadrought"]
    for idx in perc_ids:
        records[idx]["de"] = ["Percolation theory", "scaling"]
    plant("nine", mega_ids + perc_ids)

    # doc types / categories over the #9 population, for the refine queries
    nine = marks["nine"]
    for idx, dt in zip(nine, ["Article"] * 5 + ["Review"] * 2 + ["Letter"] * 2 + ["Editorial Material"]):
        records[idx]["dt"] = [dt]
    plant("nine_article_review", nine[:7])
    for idx in nine[:3]:
        records[idx]["wc"] = ["Environmental Sciences"]
    records[nine[3]]["wc"] = []  # zero categories: must drop on any exclude
    for idx in nine[4:]:
        records[idx]["wc"] = ["Meteorology & Atmospheric Sciences", "Environmental Sciences"]
    plant("nine_not_env_only", nine[4:])

    # keyword-plus counts the graph endpoints rely on: exactly 9 / >= 10
    uhi_ids = rng.sample([i for i in alive if "urban heat island" not in map(norm_keyword, records[i]["id"])], 9)
    for idx in uhi_ids:
        records[idx]["id"] = records[idx]["id"] + ["Urban Heat Island"]
    for keyword, n in (("heat wave", 30), ("climate change", 25), ("mortality", 12)):
        hosts = rng.sample(alive, n)
        for idx in hosts:
            if keyword not in map(norm_keyword, records[idx]["id"]):
                records[idx]["id"] = records[idx]["id"] + [keyword.title()]

    # case-variant author keywords collapsing onto one normalized form
    kw_case = take(2)
    records[kw_case[0]]["de"] = records[kw_case[0]]["de"] + ["Heat Wave"]
    records[kw_case[1]]["de"] = records[kw_case[1]]["de"] + ["heat  wave"]

    # ---- cited references -------------------------------------------------
    for author, rpy, source, volume, page, doi, n_papers in BASE_REFS:
        raw = ref_string(author, rpy, source, volume, page, doi)
        for idx in rng.sample(alive, n_papers):
            records[idx]["cr"].append(raw)
    for pair in PAIRS:
        hosts = rng.sample(alive, pair["n_a"] + pair["n_b"] - pair["overlap"])
        hosts_a = hosts[: pair["n_a"]]
        hosts_b = hosts[pair["n_a"] - pair["overlap"] :]
        for idx in hosts_a:
            records[idx]["cr"].append(pair["a"])
        for idx in hosts_b:
            records[idx]["cr"].append(pair["b"])
    for idx in rng.sample(alive, 10):
        records[idx]["cr"].append(NO_YEAR_REF)
    for i in alive:
        noise = [
            ref_string(f"{rng.choice(SURNAMES).upper()} {chr(65 + rng.randrange(26))}", rng.randint(1948, 2019), f"J FIXTURE {rng.randrange(100)}", str(rng.randint(1, 99)), str(rng.randint(1, 999)), None)
            for _ in range(rng.randint(0, 3))
        ]
        records[i]["cr"] = sorted(set(records[i]["cr"] + noise))

    # dropped records still carry refs; they must not leak into any count
    records[97]["cr"] = [ref_string(*BASE_REFS[6][:6])]

    # ---- self-checks -------------------------------------------------------
    for pair in PAIRS:
        assert linked(pair["a"], pair["b"]), pair
    all_year_refs: dict[int, list[str]] = {}
    for author, rpy, source, volume, page, doi, _ in BASE_REFS:
        all_year_refs.setdefault(rpy, []).append(ref_string(author, rpy, source, volume, page, doi))
    for pair in PAIRS:
        for other in all_year_refs.get(pair["rpy"], []):
            assert not linked(pair["a"], other) and not linked(pair["b"], other), (pair, other)
    for rpy, refs in all_year_refs.items():
        for i, a in enumerate(refs):
            for b in refs[i + 1 :]:
                assert not linked(a, b), (a, b)
    marker_words = {"zugspitze", "alpine", "meadow", "soil", "thermo", "heat", "budget", "megadrought", "percolation", "theory"}
    assert not marker_words & set(TITLE_WORDS)
    # noise refs must never link onto a planted pair, or the merge-loop
    # fixtures stop predicting cluster membership
    seen_refs = {raw for i in alive for raw in records[i]["cr"]}
    for pair in PAIRS:
        partner = {pair["a"]: pair["b"], pair["b"]: pair["a"]}
        for member in (pair["a"], pair["b"]):
            for other in seen_refs:
                if other == member or other == partner[member]:
                    continue
                if f", {pair['rpy']}," in other and linked(member, other):
                    raise AssertionError(f"stray link {member!r} ~ {other!r}")

    # ---- golden records ----------------------------------------------------
    golden = []
    for idx in alive:
        rec = records[idx]
        golden.append(
            {
                "record_id": record_id(idx),
                "pub_year": int(rec["py"]),
                "doc_types": sorted({t.strip() for v in rec["dt"] for t in v.split(";") if t.strip()}),
                "title": rec["ti"],
                "abstract": rec["ab"],
                "authors": rec["au"],
                "countries": rec["c1_countries"],
                "keywords_author": sorted({norm_keyword(k) for k in rec["de"]}),
                "keywords_plus": sorted({norm_keyword(k) for k in rec["id"]}),
                "subject_categories": sorted(set(rec["wc"])),
                "cited_refs": rec["cr"],
                "doi": rec["di"],
            }
        )

    # ---- query script plus expected ids ------------------------------------
    ids_of = lambda indices: sorted(record_id(i) for i in indices)
    q = {}
    q["#1"] = ("zugspitze", ids_of(marks["zug_topic"]))
    q["#2"] = ("TI:(zugspitze)", ids_of(marks["zug_title"]))
    q["#3"] = ('"alpine meadow soil"', ids_of(marks["alpine_phrase"]))
    q["#4"] = ("alpine AND meadow AND soil", ids_of(marks["alpine_and"]))
    q["#5"] = ("thermo*", ids_of(marks["thermo_star"]))
    q["#6"] = ("TS=thermo", ids_of(marks["thermo_exact"]))
    q["#7"] = ("heat-budget", ids_of(marks["hyphen_term"]))
    q["#8"] = ('"heat budget"', ids_of(marks["two_word_phrase"]))
    q["#9"] = ('megadrought OR "percolation theory"', ids_of(marks["nine"]))
    q["#10"] = ("#1 NOT #2", ids_of(set(marks["zug_topic"]) - set(marks["zug_title"])))
    q["#11"] = (
        "(#5 OR #7) NOT TS=thermo",
        ids_of((set(marks["thermo_star"]) | set(marks["hyphen_term"])) - set(marks["thermo_exact"])),
    )
    q["#12"] = ("#9 REFINED BY DOCUMENT TYPES:(Article OR Review)", ids_of(marks["nine_article_review"]))
    q["#13"] = (
        "#9 REFINED BY EXCLUDING WEB OF SCIENCE CATEGORIES:(Environmental Sciences)",
        ids_of(marks["nine_not_env_only"]),
    )
    q["#14"] = (
        "zugspitze REFINED BY PUBLICATION YEARS:(2005 OR 2006 OR 2007)",
        ids_of([i for i in marks["zug_topic"] if records[i]["py"] in ("2005", "2006", "2007")]),
    )
    q["#15"] = ("thermo* REFINED BY TIMESPAN:(2000-2010)", ids_of(marks["thermo_2000s"]))

    script_lines = ["// planted-marker query set; regenerate via tools/make_fixtures.py"]
    script_lines += [f"{name} := {text}" for name, (text, _) in q.items()]
    golden_queries = {name: {"query": text, "count": len(ids), "ids": ids} for name, (text, ids) in q.items()}

    # ---- serialize ----------------------------------------------------------
    tagged = ["FN Fixture Export", "VR 1.0"]
    for pos, rec in enumerate(records):
        lines = ["PT J"]
        if rec["au"]:
            lines.append("AU " + "; ".join(rec["au"]))
        title = rec["ti"]
        if pos % 37 == 3 and " " in title[12:]:  # plant a few continuation lines
            cut = title.index(" ", 12)
            lines.append("TI " + title[:cut])
            lines.append("   " + title[cut + 1 :])
        else:
            lines.append("TI " + title)
        abstract = rec["ab"]
        if pos % 29 == 5 and " " in abstract[40:]:
            cut = abstract.index(" ", 40)
            lines.append("AB " + abstract[:cut])
            lines.append("   " + abstract[cut + 1 :])
        else:
            lines.append("AB " + abstract)
        if rec["c1"]:
            lines.append("C1 " + "; ".join(rec["c1"]))
        if rec["de"]:
            lines.append("DE " + "; ".join(rec["de"]))
        if rec["id"]:
            lines.append("ID " + "; ".join(rec["id"]))
        if rec["wc"]:
            lines.append("WC " + "; ".join(rec["wc"]))
        lines.append("DT " + "; ".join(rec["dt"]))
        if rec["cr"]:
            lines.append("CR " + rec["cr"][0])
            lines.extend("   " + ref for ref in rec["cr"][1:])
        lines.append("PY " + rec["py"])
        if rec["di"]:
            lines.append("DI " + rec["di"])
        if rec["ut"]:
            lines.append("UT " + rec["ut"])
        lines.append("ER")
        lines.append("")
        tagged.extend(lines)
    tagged.append("EF")
    tagged_text = "\n".join(tagged) + "\n"

    header = ["PT", "AU", "TI", "AB", "C1", "DE", "ID", "WC", "DT", "CR", "PY", "DI", "UT"]
    rows = ["\t".join(header)]
    for rec in records:
        cells = [
            "J",
            "; ".join(rec["au"]),
            rec["ti"],
            rec["ab"],
            "; ".join(rec["c1"]),
            "; ".join(rec["de"]),
            "; ".join(rec["id"]),
            "; ".join(rec["wc"]),
            "; ".join(rec["dt"]),
            "; ".join(rec["cr"]),
            rec["py"],
            rec["di"] or "",
            rec["ut"] or "",
        ]
        rows.append("\t".join(cells))
    tab_text = "﻿" + "\n".join(rows) + "\n"

    planted = {
        "pairs": [
            {k: pair[k] for k in ("a", "b", "rpy", "n_a", "n_b", "overlap")}
            for pair in PAIRS
        ],
        "no_year_ref": NO_YEAR_REF,
        "keyword_exactly_nine": "urban heat island",
        "record_count": len(golden),
    }

    (OUT_DIR / "sample.tagged.txt").write_text(tagged_text, encoding="utf-8")
    (OUT_DIR / "sample.tab.txt").write_text(tab_text, encoding="utf-8")
    (OUT_DIR / "golden_records.json").write_text(json.dumps({"records": golden}, indent=1, sort_keys=True), encoding="utf-8")
    (OUT_DIR / "queries.txt").write_text("\n".join(script_lines) + "\n", encoding="utf-8")
    (OUT_DIR / "golden_queries.json").write_text(json.dumps(golden_queries, indent=1, sort_keys=True), encoding="utf-8")
    (OUT_DIR / "planted.json").write_text(json.dumps(planted, indent=1, sort_keys=True), encoding="utf-8")
    print(f"wrote {len(golden)} golden records and {len(q)} query truths to {OUT_DIR}")


if __name__ == "__main__":
    main()
