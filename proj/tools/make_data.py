#!/usr/bin/env python3
"""Regenerates the shipped data files under data/ in canonical form."""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data"
CHAIN = ["none", "tentative", "reliable", "very_reliable"]


def write(rel, doc):
    doc = {"format": "revigis/1", **doc}
    path = ROOT / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")


def cls(code, label, level, parent=None):
    c = {"code": code, "label": label, "level": level}
    if parent is not None:
        c["parent"] = parent
    return c


def lcmgb90():
    tops = ["Sea", "Inland water", "Littoral", "?", "Mixed woodland", "Coniferous", "Bog", "Arable", "Built-up", "Bare"]
    keys = [
        ("Sea / Estuary", "Sea"),
        ("Inland Water", "Inland water"),
        ("Beach / Mudflat / Cliffs", "Littoral"),
        ("Saltmarsh", "Littoral"),
        ("Rough pasture, grass moor, ...", "?"),
        ("Pasture, meadow, amenity grass", "?"),
        ("Marsh / Rough Grass", "?"),
        ("Grass Shrub Heath", "?"),
        ("Shrub Heath", "?"),
        ("Bracken", "?"),
        ("Deciduous / Mixed Wood", "Mixed woodland"),
        ("Coniferous / Evergreen Woodland", "Coniferous"),
        ("Bog (Herbaceous)", "Bog"),
        ("Tilled (Arable Crops)", "Arable"),
        ("Suburban / Rural Development", "Built-up"),
        ("Urban Development", "Built-up"),
        ("Inland Bare Ground", "Bare"),
    ]
    targets = [
        ("1", "Sea / Estuary", "Sea / Estuary"),
        ("2", "Inland Water", "Inland Water"),
        ("3", "Beach and Coastal Bare", "Beach / Mudflat / Cliffs"),
        ("4", "Saltmarsh", "Saltmarsh"),
        ("5", "Grass Heath", "Rough pasture, grass moor, ..."),
        ("9", "Moorland Grass", "Rough pasture, grass moor, ..."),
        ("6", "Mown / Grazed Turf", "Pasture, meadow, amenity grass"),
        ("7", "Meadow / Verge / Semi-natural", "Pasture, meadow, amenity grass"),
        ("19", "Ruderal Weed", "Marsh / Rough Grass"),
        ("23", "Felled Forest", "Marsh / Rough Grass"),
        ("8", "Rough / Marsh Grass", "Grass Shrub Heath"),
        ("25", "Open Shrub Heath", "Grass Shrub Heath"),
        ("10", "Open Shrub Moor", "Shrub Heath"),
        ("13", "Dense Shrub Heath", "Shrub Heath"),
        ("11", "Dense Shrub Moor", "Bracken"),
        ("12", "Bracken", "Bracken"),
        ("14", "Scrub / Orchard", "Deciduous / Mixed Wood"),
        ("15", "Deciduous Woodland", "Deciduous / Mixed Wood"),
        ("16", "Coniferous Woodland", "Coniferous / Evergreen Woodland"),
        ("24", "Lowland Bog", "Bog (Herbaceous)"),
        ("17", "Upland Bog", "Bog (Herbaceous)"),
        ("18", "Tilled Land", "Tilled (Arable Crops)"),
        ("20", "Suburban / Rural Development", "Suburban / Rural Development"),
        ("21", "Continuous Urban", "Urban Development"),
        ("22", "Inland Bare Ground", "Inland Bare Ground"),
    ]
    classes = [cls(t, t, "top") for t in tops]
    classes += [cls(k, k, "key", p) for k, p in keys]
    classes += [cls(c, l, "target", p) for c, l, p in targets]
    return {"name": "LCMGB90", "levels": ["top", "key", "target"], "classes": classes}


def lcm2000():
    tops = ["Sea", "Water inland", "Littoral sediments", "Supra littoral sediments", "Bog", "Mixed woodland",
            "Coniferous", "Arable", "Grassland", "Built-up", "Bare"]
    targets = [
        ("Sea / Estuary", "Sea / Estuary", "Sea"),
        ("Water (inland)", "Water (inland)", "Water inland"),
        ("Littoral rock sediments", "Littoral rock sediments", "Littoral sediments"),
        ("Supra-littoral rock sediments", "Supra-littoral rock sediments", "Supra littoral sediments"),
        ("B", "Bog", "Bog"),
        ("Dwarf shrub heath", "Dwarf shrub heath", "Bog"),
        ("Montane habitats", "Montane habitats", "Bog"),
        ("Broad mix woodland", "Broad mix woodland", "Mixed woodland"),
        ("Coniferous woodland", "Coniferous woodland", "Coniferous"),
        ("Arable and hortic", "Arable and hortic", "Arable"),
        ("Improved grassland", "Improved grassland", "Grassland"),
        ("Rough and semi-nat neutral and calcare", "Rough and semi-nat neutral and calcare", "Grassland"),
        ("Acid grass and brac", "Acid grass and brac", "Grassland"),
        ("Fen, marsh & swamp", "Fen, marsh & swamp", "Grassland"),
        ("Built up areas gard.", "Built up areas gard.", "Built-up"),
        ("Inland Bare Ground", "Inland Bare Ground", "Bare"),
    ]
    subclasses = [
        ("We", "Sea / Estuary", "Sea / Estuary"),
        ("W", "Water (inland)", "Water (inland)"),
        ("Lr", "Littoral rock", "Littoral rock sediments"),
        ("Lm", "Littoral sediment", "Littoral rock sediments"),
        ("Lsm", "Saltmarsh", "Littoral rock sediments"),
        ("Sr", "Supra-littoral rock", "Supra-littoral rock sediments"),
        ("Sh", "Supra-littoral sediment", "Supra-littoral rock sediments"),
        ("Bh", "Bogs (deep peat)", "B"),
        ("H", "Dwarf shrub heath", "Dwarf shrub heath"),
        ("Hga", "Open dwarf shrub heath", "Dwarf shrub heath"),
        ("Z", "Montane habitats", "Montane habitats"),
        ("D", "Broad mixed woodland", "Broad mix woodland"),
        ("C", "Coniferous woodland", "Coniferous woodland"),
        ("Ab", "Arable cereals", "Arable and hortic"),
        ("Aba", "Arable horticulture", "Arable and hortic"),
        ("Ado", "Non-rotational arable and horticulture", "Arable and hortic"),
        ("Gi", "Improved grassland", "Improved grassland"),
        ("Gis", "Setaside grass", "Improved grassland"),
        ("Gn", "Neutral grass", "Rough and semi-nat neutral and calcare"),
        ("Gc", "Calcareous grass", "Rough and semi-nat neutral and calcare"),
        ("Ga", "Acid grass", "Acid grass and brac"),
        ("Gbr", "Bracken", "Acid grass and brac"),
        ("Fs", "Fen, marsh & swamp", "Fen, marsh & swamp"),
        ("Us", "Suburban/rural developed", "Built up areas gard."),
        ("U", "Continuous Urban", "Built up areas gard."),
        ("Id", "Inland Bare Ground", "Inland Bare Ground"),
    ]
    classes = [cls(t, t, "top") for t in tops]
    classes += [cls(c, l, "target", p) for c, l, p in targets]
    classes += [cls(c, l, "subclass", p) for c, l, p in subclasses]
    return {"name": "LCM2000", "levels": ["top", "target", "subclass"], "classes": classes}


def parcel(pid, lo=None, hi=None):
    p = {"id": pid}
    if lo is not None or hi is not None:
        p["interval"] = {k: v for k, v in (("lo", lo), ("hi", hi)) if v is not None}
    return p


def features(kind, *lines, bridges=()):
    return {
        "features": [{"id": i, "kind": kind, "polyline": [[float(x), float(y)] for x, y in pts]} for i, pts in lines],
        "bridges": [{"id": i, "xy": [float(x), float(y)]} for i, (x, y) in bridges],
    }


def main():
    write("taxonomies/LCMGB90.json", lcmgb90())
    write("taxonomies/LCM2000.json", lcm2000())
    write("relations/LCMGB90-LCM2000.json", {
        "source": "LCMGB90", "target": "LCM2000", "grades": CHAIN,
        "entries": [
            {"from": "16", "to": "C", "grade": "very_reliable"},
            {"from": "17", "to": "B", "grade": "tentative"},
            {"from": "24", "to": "B", "grade": "tentative"},
        ],
    })

    ex = "examples/"
    write(ex + "flood/chain.json", {
        "global_bounds": {"lo": 0, "hi": 100},
        "parcels": [parcel("A", 10, 20), parcel("B"), parcel("C", 18, 30)],
        "flows": [{"from": "A", "to": "B"}, {"from": "B", "to": "C"}],
        "neighbors": [["A", "B"], ["B", "C"]],
    })
    write(ex + "flood/conflict.json", {
        "global_bounds": {"lo": 0, "hi": 100},
        "parcels": [parcel("A", 0, 5), parcel("B", 10, 20)],
        "flows": [{"from": "A", "to": "B"}],
        "neighbors": [["A", "B"]],
    })

    write(ex + "fuse/roads.json", features("road", ("r1", [(-10, 0), (10, 0)])))
    write(ex + "fuse/streams.json", features("stream", ("s1", [(0, -10), (0, 10)])))
    write(ex + "fuse/bridges.json", {"features": [], "bridges": [{"id": "b1", "xy": [0.0, 0.0]}]})
    write(ex + "fuse/no_bridges.json", {"features": [], "bridges": []})

    write(ex + "change/lcmgb90_16.json", {"width": 1, "height": 1, "taxonomy": "LCMGB90", "cells": ["16"]})
    write(ex + "change/lcm2000_C.json", {"width": 1, "height": 1, "taxonomy": "LCM2000", "cells": ["C"]})
    write(ex + "change/lcmgb90_scene.json",
          {"width": 3, "height": 1, "taxonomy": "LCMGB90", "cells": ["16", "24", "16"]})
    write(ex + "change/lcm2000_scene.json",
          {"width": 3, "height": 1, "taxonomy": "LCM2000", "cells": ["C", "B", "B"]})
    write(ex + "change/elevation_1990.json", {"width": 2, "height": 2, "values": [12.5, 14.0, 13.0, 15.5]})
    write(ex + "change/elevation_2000.json", {"width": 2, "height": 2, "values": [12.5, 14.0, 13.0, 15.5]})
    write(ex + "change/labels_1990.json",
          {"width": 2, "height": 1, "taxonomy": "LCMGB90", "cells": ["16", "15"]})
    write(ex + "change/labels_2000.json",
          {"width": 2, "height": 1, "taxonomy": "LCMGB90", "cells": ["16", "23"]})
    write(ex + "change/lut_complete.json", {"taxonomy": "LCMGB90", "entries": [
        {"from": "15", "to": "23", "distance": 0.6},
        {"from": "16", "to": "16", "distance": 0.0},
    ]})
    write(ex + "change/lut_incomplete.json", {"taxonomy": "LCMGB90", "entries": [
        {"from": "16", "to": "16", "distance": 0.0},
    ]})

    write(ex + "fitness/bridges_product.json", {
        "product": "bridges-survey", "grades": CHAIN,
        "statements": [
            {"subject": "bridge", "parameter": "geometric_accuracy", "grade": "tentative"},
            {"subject": "bridge", "parameter": "logical_consistency", "grade": "very_reliable"},
        ],
        "provenance": "Bridge layer fused from road and stream networks; positions digitized at small scale.",
    })
    write(ex + "fitness/navigation.json", {
        "problem": "navigation", "grades": CHAIN,
        "requirements": [
            {"subject": "bridge", "parameter": "logical_consistency", "required": "reliable",
             "relevance": "very_reliable"},
            {"subject": "bridge", "parameter": "geometric_accuracy", "required": "reliable", "relevance": "none"},
        ],
    })
    write(ex + "fitness/damage_assessment.json", {
        "problem": "damage-assessment", "grades": CHAIN,
        "requirements": [
            {"subject": "bridge", "parameter": "geometric_accuracy", "required": "very_reliable",
             "relevance": "very_reliable"},
            {"subject": "bridge", "parameter": "logical_consistency", "required": "tentative",
             "relevance": "reliable"},
        ],
    })
    write(ex + "fitness/three_level_problem.json", {
        "problem": "navigation-coarse", "grades": ["low", "medium", "high"],
        "requirements": [
            {"subject": "bridge", "parameter": "logical_consistency", "required": "medium", "relevance": "high"},
        ],
    })


if __name__ == "__main__":
    main()
