"""Run and sweep configuration"""

import configparser
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import sympy

from dormant.charp.digits import DEFAULT_ENUM_CAP
from dormant.counting.formula import DEFAULT_PRECISION, WEIGHT_POLICIES
from dormant.errors import InputError

PRECISION_ENV = "DORMANT_PRECISION"
ENUM_CAP_ENV = "DORMANT_ENUM_CAP"

SWEEP_SECTION = "sweep"
SWEEP_KEYS = {"p", "g", "r", "weights", "degl_even", "oracle", "precision", "max_rows", "workers", "output", "json"}


def _env_int(name: str, default: int, minimum: int) -> int:
    """Read a positive integer override from the environment"""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise InputError(f"{name} must be at least {minimum}, got {value}")
    return value


def default_precision() -> int:
    """Oracle precision in bits, DORMANT_PRECISION or 128"""
    return _env_int(PRECISION_ENV, DEFAULT_PRECISION, 64)


def default_enum_cap() -> int:
    """Enumeration cap, DORMANT_ENUM_CAP or 10^7"""
    return _env_int(ENUM_CAP_ENV, DEFAULT_ENUM_CAP, 1)


@dataclass
class RunConfig:
    """Validated configuration for one CLI invocation"""
    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    precision: int = DEFAULT_PRECISION
    enum_cap: int = DEFAULT_ENUM_CAP
    json_output: bool = False
    verbose: bool = False


@dataclass
class SweepConfig:
    """Grid and output settings for a sweep"""
    p: List[int] = field(default_factory=list)
    g: List[int] = field(default_factory=list)
    r: List[int] = field(default_factory=list)
    weights: str = "valid"
    degL_even: bool = True
    oracle: bool = True
    precision: int = DEFAULT_PRECISION
    max_rows: int = DEFAULT_ENUM_CAP
    workers: Optional[int] = None  # None: one per physical core
    output: Optional[str] = None  # None: CSV on stdout
    json_output: Optional[str] = None  # JSON mirror of the CSV


def parse_int_list(text: str, primes: bool = False) -> List[int]:
    """Parse '1,2,3' or 'lo..hi'; for primes a range keeps only the odd primes"""
    text = text.strip()
    if not text:
        return []
    values: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = (int(bound) for bound in part.split("..", 1))
                if primes:
                    values.extend(q for q in sympy.primerange(max(lo, 3), hi + 1))
                else:
                    values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise InputError(f"cannot parse integer list {text!r}") from None
    return sorted(set(values))


def load_sweep_config(path: str, default_max_rows: Optional[int] = None) -> SweepConfig:
    """Read a key = value sweep file; the [sweep] header is optional"""
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as exc:
        raise InputError(f"cannot read sweep config {path}: {exc.strerror}") from None
    if not text.lstrip().startswith("["):
        text = f"[{SWEEP_SECTION}]\n" + text
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        raise InputError(f"malformed sweep config {path}: {exc.message}") from None
    if not parser.has_section(SWEEP_SECTION):
        raise InputError(f"sweep config {path} has no [{SWEEP_SECTION}] section")
    section = parser[SWEEP_SECTION]
    unknown = set(section.keys()) - SWEEP_KEYS
    if unknown:
        raise InputError(f"unknown sweep config keys: {', '.join(sorted(unknown))}")
    try:
        config = SweepConfig(
            p=parse_int_list(section.get("p", ""), primes=True),
            g=parse_int_list(section.get("g", "")),
            r=parse_int_list(section.get("r", "")),
            weights=section.get("weights", "valid").strip(),
            degL_even=section.getboolean("degl_even", True),
            oracle=section.getboolean("oracle", True),
            precision=section.getint("precision", default_precision()),
            max_rows=section.getint("max_rows", default_max_rows or default_enum_cap()),
            workers=section.getint("workers") if "workers" in section else None,
            output=section.get("output") or None,
            json_output=section.get("json") or None,
        )
    except ValueError as exc:
        raise InputError(f"bad value in sweep config {path}: {exc}") from None
    validate_sweep_config(config)
    return config


def validate_sweep_config(config: SweepConfig) -> None:
    """Reject settings no sweep could run with"""
    if config.weights not in WEIGHT_POLICIES:
        raise InputError(f"weights must be one of {WEIGHT_POLICIES}, got {config.weights!r}")
    if config.precision < 64:
        raise InputError(f"precision must be at least 64 bits, got {config.precision}")
    if config.max_rows < 0:
        raise InputError(f"max_rows must be non-negative, got {config.max_rows}")
    if config.workers is not None and config.workers < 1:
        raise InputError(f"workers must be positive, got {config.workers}")
    not_odd_primes = [q for q in config.p if q < 3 or not sympy.isprime(q)]
    if not_odd_primes:
        raise InputError(f"p values must be odd primes, got {not_odd_primes}")
    if any(g < 0 for g in config.g) or any(r < 0 for r in config.r):
        raise InputError("g and r values must be non-negative")
