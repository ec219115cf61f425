"""The kitchen domain with elementary attributes, its goals and its corpus.

Devices change elementary attributes of objects (temperature, colour, taste,
...), transfer actions move an attribute from one object to another, and
manipulation actions move objects between containers and operate devices.
The domain is kept as PDDL text so the shipped corpus and the in-memory
domain can never drift apart.
"""

from __future__ import annotations

from pathlib import Path

from .model import Domain, Problem
from .parser import (ViewSpec, parse_domain, parse_views, serialize_domain, serialize_problem,
                     serialize_views)

DOMAIN_PDDL = """\
(define (domain kitchen)
  (:types an_object a_container a_hand a_device a_closable a_portable a_food
          a_microwave a_fridge a_toaster a_blender a_hair_dryer a_contact_grill)
  (:predicates
    (present ?o - an_object) (absent ?o - an_object)
    (hot ?o - an_object) (warm ?o - an_object) (cold ?o - an_object)
    (solid ?o - an_object) (liquid ?o - an_object) (gas ?o - an_object)
    (white ?o - an_object) (brown ?o - an_object) (gray ?o - an_object)
    (purple ?o - an_object) (no_color ?o - an_object)
    (chamomile ?o - an_object) (mint ?o - an_object) (no_aroma ?o - an_object)
    (salt ?o - an_object) (bitter ?o - an_object) (sweet ?o - an_object)
    (sour ?o - an_object) (no_taste ?o - an_object)
    (light ?o - an_object) (dark ?o - an_object)
    (dry ?o - an_object) (wet ?o - an_object)
    (soft ?o - an_object) (hard ?o - an_object)
    (clean ?o - an_object) (dirty ?o - an_object)
    (whole ?o - an_object) (granular ?o - an_object)
    (inside ?o - an_object ?c - an_object) (outside ?o - an_object ?c - an_object)
    (close ?a - an_object ?b - an_object) (distant ?a - an_object ?b - an_object)
    (permeable ?o - an_object) (impermeable ?o - an_object)
    (closed ?o - an_object) (open ?o - an_object)
    (off ?o - an_object) (on ?o - an_object))
  (:groups
    (required (presence present absent))
    (elementary (temperature hot warm cold)
                (state_of_matter solid liquid gas)
                (color white brown gray purple no_color)
                (aroma chamomile mint no_aroma)
                (taste salt bitter sweet sour no_taste)
                (light light dark)
                (wetness dry wet)
                (hardness soft hard)
                (cleanness clean dirty)
                (granularity whole granular))
    (spatial (content inside outside)
             (distance close distant)
             (permeability permeable impermeable))
    (device (openness closed open)
            (activity off on)))

  ; ---- device effects
  (:action use_microwave
    :parameters (?m - a_microwave ?o - an_object ?c - a_container)
    :precondition (and (present ?m) (wet ?o) (inside ?c ?m) (inside ?o ?c) (closed ?m) (on ?m))
    :effect (and (hot ?o) (not (cold ?o)) (not (warm ?o))))
  (:action use_fridge
    :parameters (?f - a_fridge ?o - an_object ?c - a_container)
    :precondition (and (present ?f) (inside ?c ?f) (inside ?o ?c) (closed ?f) (on ?f))
    :effect (and (cold ?o) (not (hot ?o)) (not (warm ?o))))
  (:action use_toaster
    :parameters (?t - a_toaster ?o - an_object)
    :precondition (and (present ?t) (solid ?o) (inside ?o ?t) (on ?t))
    :effect (and (hot ?o) (hard ?o) (brown ?o)
                 (not (cold ?o)) (not (warm ?o)) (not (soft ?o)) (not (white ?o))))
  (:action use_contact_grill
    :parameters (?g - a_contact_grill ?o - an_object)
    :precondition (and (present ?g) (solid ?o) (inside ?o ?g) (closed ?g) (on ?g))
    :effect (and (hot ?o) (brown ?o) (not (cold ?o)) (not (warm ?o)) (not (white ?o))))
  (:action use_blender
    :parameters (?b - a_blender ?o - an_object)
    :precondition (and (present ?b) (solid ?o) (whole ?o) (inside ?o ?b) (on ?b))
    :effect (and (granular ?o) (not (whole ?o))))
  (:action use_hair_dryer
    :parameters (?d - a_hair_dryer ?o - an_object)
    :precondition (and (present ?d) (dry ?o) (close ?d ?o) (on ?d))
    :effect (and (hot ?o) (not (cold ?o)) (not (warm ?o))))

  ; ---- attribute transfer
  (:action add_mint_aroma
    :parameters (?o1 - an_object ?o2 - an_object ?c - a_container)
    :precondition (and (mint ?o1) (hot ?o2) (liquid ?o2) (inside ?o1 ?c) (inside ?o2 ?c))
    :effect (and (mint ?o2) (not (no_aroma ?o2))))
  (:action add_chamomile_aroma
    :parameters (?o1 - an_object ?o2 - an_object ?c - a_container)
    :precondition (and (chamomile ?o1) (hot ?o2) (liquid ?o2) (inside ?o1 ?c) (inside ?o2 ?c))
    :effect (and (chamomile ?o2) (not (no_aroma ?o2))))
  (:action add_salt_taste
    :parameters (?o1 - a_food ?o2 - a_food ?c - a_container)
    :precondition (and (salt ?o1) (granular ?o1) (inside ?o1 ?c) (inside ?o2 ?c))
    :effect (and (salt ?o2) (not (no_taste ?o2))))

  ; ---- manipulation
  (:action put_in
    :parameters (?o - a_portable ?c - a_container ?h - a_hand)
    :precondition (and (solid ?o) (inside ?o ?h) (open ?c))
    :effect (and (inside ?o ?c) (not (inside ?o ?h))))
  (:action get_out
    :parameters (?o - a_portable ?c - a_container ?h - a_hand)
    :precondition (and (solid ?o) (inside ?o ?c) (open ?c))
    :effect (and (inside ?o ?h) (not (inside ?o ?c))))
  (:action pour
    :parameters (?l - an_object ?c1 - a_container ?c2 - a_container ?h - a_hand)
    :precondition (and (liquid ?l) (inside ?l ?c1) (inside ?c1 ?h) (open ?c1) (open ?c2))
    :effect (and (inside ?l ?c2) (not (inside ?l ?c1))))
  (:action approach_with
    :parameters (?d - a_device ?o - an_object ?h - a_hand)
    :precondition (and (present ?d) (inside ?d ?h) (distant ?d ?o))
    :effect (and (close ?d ?o) (not (distant ?d ?o))))
  (:action open
    :parameters (?c - a_closable)
    :precondition (and (present ?c) (closed ?c))
    :effect (and (open ?c) (not (closed ?c))))
  (:action close
    :parameters (?c - a_closable)
    :precondition (and (present ?c) (open ?c))
    :effect (and (closed ?c) (not (open ?c))))
  (:action switch_on
    :parameters (?d - a_device)
    :precondition (and (present ?d) (off ?d))
    :effect (and (on ?d) (not (off ?d))))
  (:action switch_off
    :parameters (?d - a_device)
    :precondition (and (present ?d) (on ?d))
    :effect (and (off ?d) (not (on ?d))))
)
"""

VIEWS_TEXT = "R+E\nR+E+S\nR+E+S+D\n"

# object -> types; every object is also an_object
OBJECT_TYPES: dict[str, tuple[str, ...]] = {
    "toaster": ("a_device", "a_container", "a_closable", "a_toaster"),
    "microwave": ("a_device", "a_container", "a_closable", "a_microwave"),
    "blender": ("a_device", "a_container", "a_blender"),
    "hair_dryer": ("a_device", "a_hair_dryer", "a_portable"),
    "fridge": ("a_device", "a_container", "a_closable", "a_fridge"),
    "contact_grill": ("a_device", "a_container", "a_closable", "a_contact_grill"),
    "water": ("a_food",),
    "water_pitcher": ("a_container", "a_closable", "a_portable"),
    "milk": ("a_food",),
    "milk_pitcher": ("a_container", "a_closable", "a_portable"),
    "cola": ("a_food",),
    "cola_bottle": ("a_container", "a_closable", "a_portable"),
    "white_bread": ("a_portable", "a_food"),
    "plate": ("a_container", "a_portable"),
    "pringles": ("a_portable", "a_food"),
    "pringles_box": ("a_container", "a_closable", "a_portable"),
    "glass": ("a_container", "a_portable"),
    "mug": ("a_container", "a_portable"),
    "tray": ("a_container", "a_portable"),
    "chamomile_tea_bag": ("a_portable",),
    "mint_tea_bag": ("a_portable",),
    "table": ("a_container",),
    "robot_hand": ("a_hand",),
}

# elementary attributes of each object in the initial scene
ATTRIBUTES: dict[str, tuple[str, ...]] = {
    "toaster": ("solid", "dry", "hard", "clean", "whole", "warm", "gray"),
    "microwave": ("solid", "dry", "hard", "clean", "whole", "warm", "white"),
    "blender": ("solid", "dry", "hard", "clean", "whole", "warm", "gray"),
    "hair_dryer": ("solid", "dry", "hard", "clean", "whole", "warm", "purple"),
    "fridge": ("solid", "dry", "hard", "clean", "whole", "cold", "white"),
    "contact_grill": ("solid", "dry", "hard", "clean", "whole", "warm", "gray"),
    "water": ("liquid", "wet", "warm", "no_color", "no_aroma", "no_taste", "clean", "light"),
    "milk": ("liquid", "wet", "cold", "white", "no_aroma", "sweet", "clean", "light"),
    "cola": ("liquid", "wet", "warm", "brown", "no_aroma", "sweet", "clean", "dark"),
    "white_bread": ("solid", "dry", "warm", "soft", "white", "whole", "no_aroma", "no_taste",
                    "clean", "light"),
    "pringles": ("solid", "dry", "warm", "hard", "brown", "whole", "salt", "no_aroma", "clean"),
    "water_pitcher": ("solid", "dry", "hard", "clean", "whole", "warm", "no_color"),
    "milk_pitcher": ("solid", "dry", "hard", "clean", "whole", "warm", "no_color"),
    "cola_bottle": ("solid", "dry", "hard", "clean", "whole", "warm", "no_color"),
    "pringles_box": ("solid", "dry", "soft", "clean", "whole", "warm", "purple"),
    "plate": ("solid", "dry", "hard", "clean", "whole", "warm", "white"),
    "glass": ("solid", "dry", "hard", "clean", "whole", "warm", "no_color"),
    "mug": ("solid", "dry", "hard", "clean", "whole", "warm", "purple"),
    "tray": ("solid", "dry", "hard", "clean", "whole", "warm", "gray"),
    "chamomile_tea_bag": ("solid", "dry", "soft", "whole", "warm", "chamomile", "bitter",
                          "clean"),
    "mint_tea_bag": ("solid", "dry", "soft", "whole", "warm", "mint", "bitter", "clean"),
    "table": ("solid", "dry", "hard", "clean", "whole", "warm", "brown"),
    "robot_hand": ("solid", "dry", "hard", "clean", "whole", "warm", "gray"),
}

# where everything is at the start
LOCATION: dict[str, str] = {
    "water": "water_pitcher", "milk": "milk_pitcher", "cola": "cola_bottle",
    "pringles": "pringles_box",
    **{o: "table" for o in ("toaster", "microwave", "blender", "hair_dryer", "fridge",
                            "contact_grill", "water_pitcher", "milk_pitcher", "cola_bottle",
                            "white_bread", "plate", "pringles_box", "glass", "mug", "tray",
                            "chamomile_tea_bag", "mint_tea_bag")},
}

OPEN = ("water_pitcher", "milk_pitcher", "cola_bottle", "pringles_box", "plate", "glass", "mug",
        "tray", "table", "toaster", "blender")
CLOSED = ("microwave", "fridge", "contact_grill")
SWITCHED_ON = ("fridge",)

GOALS: dict[int, tuple[tuple[str, ...], ...]] = {
    0: (("hot", "cola"), ("inside", "cola", "glass"), ("inside", "glass", "tray")),
    1: (("cold", "cola"), ("inside", "cola", "glass"), ("inside", "glass", "tray")),
    2: (("hot", "milk"), ("inside", "milk", "mug"), ("inside", "mug", "tray")),
    3: (("mint", "water"), ("cold", "water"), ("inside", "water", "glass"),
        ("inside", "glass", "tray")),
    4: (("hot", "white_bread"), ("hard", "white_bread"), ("brown", "white_bread"),
        ("inside", "white_bread", "plate"), ("inside", "plate", "tray")),
    5: (("hot", "white_bread"), ("hard", "white_bread"), ("brown", "white_bread"),
        ("salt", "white_bread"), ("inside", "white_bread", "plate"), ("inside", "plate", "tray")),
}

# the benchmark rows: single goals first, then pairs
SUITE_GOALS = ("4", "1", "2", "0", "5", "3", "1+5", "0+2", "1+2", "2+5", "0+5", "1+3", "2+3",
               "0+3", "3+5", "0+1")

# reference optimal costs the reconstruction is calibrated against
REFERENCE_OPTIMAL = {"4": 8, "1": 10, "2": 11, "0": 11, "5": 15}

# hand-written plan for goal 3 (mint iced tea) in the full representation
MINT_ICED_TEA_PLAN = (
    ("get_out", ("mint_tea_bag", "table", "robot_hand")),
    ("put_in", ("mint_tea_bag", "water_pitcher", "robot_hand")),
    ("get_out", ("water_pitcher", "table", "robot_hand")),
    ("open", ("microwave",)),
    ("put_in", ("water_pitcher", "microwave", "robot_hand")),
    ("close", ("microwave",)),
    ("switch_on", ("microwave",)),
    ("use_microwave", ("microwave", "water", "water_pitcher")),
    ("add_mint_aroma", ("mint_tea_bag", "water", "water_pitcher")),
    ("switch_off", ("microwave",)),
    ("open", ("microwave",)),
    ("get_out", ("water_pitcher", "microwave", "robot_hand")),
    ("open", ("fridge",)),
    ("put_in", ("water_pitcher", "fridge", "robot_hand")),
    ("close", ("fridge",)),
    ("use_fridge", ("fridge", "water", "water_pitcher")),
    ("open", ("fridge",)),
    ("get_out", ("water_pitcher", "fridge", "robot_hand")),
    ("pour", ("water", "water_pitcher", "glass", "robot_hand")),
    ("get_out", ("glass", "table", "robot_hand")),
    ("put_in", ("glass", "tray", "robot_hand")),
)

_DOMAIN: Domain | None = None


def build_domain() -> Domain:
    global _DOMAIN
    if _DOMAIN is None:
        _DOMAIN = parse_domain(DOMAIN_PDDL)
    return _DOMAIN


def build_views(domain: Domain | None = None) -> ViewSpec:
    return parse_views(VIEWS_TEXT, domain or build_domain())


def initial_state() -> frozenset:
    init = set()
    for obj in OBJECT_TYPES:
        init.add(("present", obj))
        init.update((attr, obj) for attr in ATTRIBUTES[obj])
    init.update(("inside", obj, where) for obj, where in LOCATION.items())
    init.update(("open", o) for o in OPEN)
    init.update(("closed", o) for o in CLOSED)
    for obj, types in OBJECT_TYPES.items():
        if "a_device" in types:
            init.add(("on" if obj in SWITCHED_ON else "off", obj))
    init.update(("distant", "hair_dryer", o) for o in OBJECT_TYPES if o != "hair_dryer")
    return frozenset(init)


def goal_atoms(goal_id: str | int) -> frozenset:
    """Atoms of a catalogue goal (``3``) or of a combination (``"0+1"``)."""
    atoms: set = set()
    for part in str(goal_id).split("+"):
        part = part.strip()
        if not part.isdigit() or int(part) not in GOALS:
            raise KeyError(f"unknown goal id {goal_id!r}")
        atoms.update(GOALS[int(part)])
    return frozenset(atoms)


def build_problem(goal_spec: str | int | frozenset | set = "3", name: str | None = None,
                  domain: Domain | None = None) -> Problem:
    """The kitchen scene with a catalogue goal id or an explicit set of atoms."""
    domain = domain or build_domain()
    if isinstance(goal_spec, (set, frozenset)):
        goal = frozenset(goal_spec)
        name = name or "kitchen_custom"
    else:
        goal = goal_atoms(goal_spec)
        name = name or "kitchen_goal_" + str(goal_spec).replace("+", "_")
    objects = tuple((o, frozenset(("an_object", *ts))) for o, ts in OBJECT_TYPES.items())
    return Problem(name, domain, objects, initial_state(), goal)


def problem_filename(goal_id: str) -> str:
    return "goal_" + str(goal_id).replace("+", "_") + ".prob"


def emit_corpus(directory: str | Path, goals=SUITE_GOALS) -> list[Path]:
    """Write ``kitchen.dom``, ``kitchen.views`` and one ``.prob`` per goal."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    domain = build_domain()
    written = []
    for fname, text in (("kitchen.dom", serialize_domain(domain)),
                        ("kitchen.views", serialize_views(build_views(domain), domain))):
        (directory / fname).write_text(text)
        written.append(directory / fname)
    for g in goals:
        path = directory / problem_filename(g)
        path.write_text(serialize_problem(build_problem(g, domain=domain)))
        written.append(path)
    return written


def corpus_dir() -> Path:
    """Directory of the corpus shipped inside the package."""
    return Path(__file__).resolve().parent / "corpus"
