"""Dataset schemas, CSV/ARFF ingestion, stratified splitting, synthetic data.

The three benchmark datasets have different on-disk label encodings; every
matrix in memory carries labels in the canonical encoding
{Phishing: -1, Suspicious: 0, Legitimate: 1} regardless of source.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path

import numpy as np

from ._util import StratificationWarning, rng_from


class DataError(Exception):
    """An input file is missing, malformed, or violates its schema."""


class ClassLabel(IntEnum):
    """Label space; enum values are the canonical on-disk codes."""

    PHISHING = -1
    SUSPICIOUS = 0
    LEGITIMATE = 1

    @property
    def display_name(self) -> str:
        return self.name.capitalize()


CANONICAL_LABEL_COLUMN = "label"
CANONICAL_LABEL_MAPPING = {
    -1: ClassLabel.PHISHING,
    0: ClassLabel.SUSPICIOUS,
    1: ClassLabel.LEGITIMATE,
}

# Per-feature value domains.
CONTINUOUS = "continuous"
TERNARY = "ternary"  # values in {-1, 0, 1}
BINARY = "binary"  # values in {0, 1}


@dataclass(frozen=True)
class DatasetDescriptor:
    """Schema of one dataset: feature names, domains, raw label encoding."""

    id: str
    feature_names: tuple[str, ...]
    label_mapping: dict[int, ClassLabel]
    value_domain: tuple[str, ...]
    label_column: str = CANONICAL_LABEL_COLUMN
    expected_rows: int | None = None
    class_proportions: dict[ClassLabel, float] | None = None

    def __post_init__(self) -> None:
        if len(self.value_domain) != len(self.feature_names):
            raise ValueError("value_domain must align with feature_names")
        bad = set(self.value_domain) - {CONTINUOUS, TERNARY, BINARY}
        if bad:
            raise ValueError(f"unknown value domains: {sorted(bad)}")

    @property
    def feature_count(self) -> int:
        return len(self.feature_names)

    @property
    def classes(self) -> tuple[ClassLabel, ...]:
        """Classes this schema can express, ascending canonical code."""
        return tuple(sorted(set(self.label_mapping.values())))


def _domains(continuous=(), binary=(), ternary=(), order=()) -> tuple[str, ...]:
    lookup = {}
    lookup.update({name: CONTINUOUS for name in continuous})
    lookup.update({name: BINARY for name in binary})
    lookup.update({name: TERNARY for name in ternary})
    return tuple(lookup[name] for name in order)


_D1_FEATURES = (
    "NumDots", "SubdomainLevel", "PathLevel", "UrlLength", "NumDash",
    "NumDashInHostname", "AtSymbol", "TildeSymbol", "NumUnderscore",
    "NumPercent", "NumQueryComponents", "NumAmpersand", "NumHash",
    "NumNumericChars", "NoHttps", "RandomString", "IpAddress",
    "DomainInSubdomains", "DomainInPaths", "HttpsInHostname",
    "HostnameLength", "PathLength", "QueryLength", "DoubleSlashInPath",
    "NumSensitiveWords", "EmbeddedBrandName", "PctExtHyperlinks",
    "PctExtResourceUrls", "ExtFavicon", "InsecureForms",
    "RelativeFormAction", "ExtFormAction", "AbnormalFormAction",
    "PctNullSelfRedirectHyperlinks", "FrequentDomainNameMismatch",
    "FakeLinkInStatusBar", "RightClickDisabled", "PopUpWindow",
    "SubmitInfoToEmail", "IframeOrFrame", "MissingTitle",
    "ImagesOnlyInForm", "SubdomainLevelRT", "UrlLengthRT",
    "PctExtResourceUrlsRT", "AbnormalExtFormActionR", "ExtMetaScriptLinkRT",
    "PctExtNullSelfRedirectHyperlinksRT",
)

_D1_BINARY = (
    "AtSymbol", "TildeSymbol", "NoHttps", "RandomString", "IpAddress",
    "DomainInSubdomains", "DomainInPaths", "HttpsInHostname",
    "DoubleSlashInPath", "EmbeddedBrandName", "ExtFavicon", "InsecureForms",
    "RelativeFormAction", "ExtFormAction", "AbnormalFormAction",
    "FrequentDomainNameMismatch", "FakeLinkInStatusBar",
    "RightClickDisabled", "PopUpWindow", "SubmitInfoToEmail",
    "IframeOrFrame", "MissingTitle", "ImagesOnlyInForm",
)

_D1_TERNARY = (
    "SubdomainLevelRT", "UrlLengthRT", "PctExtResourceUrlsRT",
    "AbnormalExtFormActionR", "ExtMetaScriptLinkRT",
    "PctExtNullSelfRedirectHyperlinksRT",
)

_D1_CONTINUOUS = tuple(
    n for n in _D1_FEATURES if n not in _D1_BINARY and n not in _D1_TERNARY
)

DATASET1 = DatasetDescriptor(
    id="D1",
    feature_names=_D1_FEATURES,
    label_mapping={0: ClassLabel.LEGITIMATE, 1: ClassLabel.PHISHING},
    value_domain=_domains(
        continuous=_D1_CONTINUOUS, binary=_D1_BINARY, ternary=_D1_TERNARY,
        order=_D1_FEATURES,
    ),
    label_column="CLASS_LABEL",
    expected_rows=10000,
    class_proportions={
        ClassLabel.PHISHING: 5000 / 10000,
        ClassLabel.LEGITIMATE: 5000 / 10000,
    },
)

_D2_FEATURES = (
    "having_IP_Address", "URL_Length", "Shortining_Service",
    "having_At_Symbol", "double_slash_redirecting", "Prefix_Suffix",
    "having_Sub_Domain", "SSLfinal_State", "Domain_registeration_length",
    "Favicon", "port", "HTTPS_token", "Request_URL", "URL_of_Anchor",
    "Links_in_tags", "SFH", "Submitting_to_email", "Abnormal_URL",
    "Redirect", "on_mouseover", "RightClick", "popUpWidnow", "Iframe",
    "age_of_domain", "DNSRecord", "web_traffic", "Page_Rank",
    "Google_Index", "Links_pointing_to_page", "Statistical_report",
)

DATASET2 = DatasetDescriptor(
    id="D2",
    feature_names=_D2_FEATURES,
    label_mapping={-1: ClassLabel.PHISHING, 1: ClassLabel.LEGITIMATE},
    value_domain=(TERNARY,) * len(_D2_FEATURES),
    label_column="Result",
    expected_rows=11055,
    class_proportions={
        ClassLabel.PHISHING: 4898 / 11055,
        ClassLabel.LEGITIMATE: 6157 / 11055,
    },
)

_D3_FEATURES = (
    "SFH", "popUpWidnow", "SSLfinal_State", "Request_URL", "URL_of_Anchor",
    "web_traffic", "URL_Length", "age_of_domain", "having_IP_Address",
)

DATASET3 = DatasetDescriptor(
    id="D3",
    feature_names=_D3_FEATURES,
    label_mapping={
        -1: ClassLabel.PHISHING,
        0: ClassLabel.SUSPICIOUS,
        1: ClassLabel.LEGITIMATE,
    },
    value_domain=(TERNARY,) * len(_D3_FEATURES),
    label_column="Result",
    expected_rows=1353,
    class_proportions={
        ClassLabel.PHISHING: 702 / 1353,
        ClassLabel.LEGITIMATE: 548 / 1353,
        ClassLabel.SUSPICIOUS: 103 / 1353,
    },
)

BUILTIN_DESCRIPTORS = {"d1": DATASET1, "d2": DATASET2, "d3": DATASET3}


def descriptor_by_id(dataset_id: str) -> DatasetDescriptor:
    try:
        return BUILTIN_DESCRIPTORS[dataset_id.lower()]
    except KeyError:
        raise ValueError(f"unknown dataset id {dataset_id!r}; expected d1, d2 or d3")


@dataclass(frozen=True)
class FeatureMatrix:
    """Immutable float64 feature matrix with canonical int8 labels."""

    values: np.ndarray
    labels: np.ndarray
    descriptor: DatasetDescriptor

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        labels = np.ascontiguousarray(self.labels, dtype=np.int8)
        if values.ndim != 2:
            raise ValueError("values must be a 2-D array")
        if values.shape[1] != self.descriptor.feature_count:
            raise ValueError(
                f"expected {self.descriptor.feature_count} feature columns, "
                f"got {values.shape[1]}"
            )
        if labels.shape != (values.shape[0],):
            raise ValueError("labels must have one entry per row")
        if values.size and not np.isfinite(values).all():
            raise ValueError("values must be finite")
        if labels.size and not np.isin(labels, (-1, 0, 1)).all():
            raise ValueError("labels must be canonical codes -1, 0 or 1")
        values.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]

    def take(self, indices: np.ndarray) -> "FeatureMatrix":
        """Row subset in the given order; shares the descriptor."""
        idx = np.asarray(indices, dtype=np.intp)
        return FeatureMatrix(self.values[idx], self.labels[idx], self.descriptor)

    def class_list(self) -> tuple[ClassLabel, ...]:
        """Classes present, ascending canonical code."""
        return tuple(ClassLabel(int(c)) for c in np.unique(self.labels))


def class_counts(m: FeatureMatrix) -> dict[ClassLabel, int]:
    """Rows per class present in the matrix, largest class first."""
    codes, counts = np.unique(m.labels, return_counts=True)
    pairs = sorted(zip(codes, counts), key=lambda p: (-p[1], p[0]))
    return {ClassLabel(int(c)): int(n) for c, n in pairs}


def _parse_cell(cell: str, row: int, col: int, path: Path) -> float:
    try:
        return float(cell)
    except ValueError:
        raise DataError(
            f"{path}: unparseable numeric value {cell!r} at row {row}, column {col + 1}"
        )


def _map_label(cell: str, mapping: dict[int, ClassLabel], row: int, path: Path) -> int:
    try:
        raw = float(cell)
    except ValueError:
        raise DataError(f"{path}: unparseable label {cell!r} at row {row}")
    code = int(raw)
    if code != raw or code not in mapping:
        raise DataError(
            f"{path}: unknown raw label value {cell!r} at row {row}; "
            f"expected one of {sorted(mapping)}"
        )
    return int(mapping[code])


def _build_matrix(
    header: list[str],
    rows: list[list[str]],
    descriptor: DatasetDescriptor,
    path: Path,
) -> FeatureMatrix:
    # A leading "id" column (as shipped with some distributions) is dropped.
    if header and header[0].strip().lower() == "id":
        header = header[1:]
        rows = [r[1:] for r in rows]
    expected = descriptor.feature_count + 1
    if len(header) != expected:
        raise DataError(
            f"{path}: expected {expected} columns "
            f"({descriptor.feature_count} features + label), got {len(header)}"
        )
    label_name = header[-1].strip()
    if label_name == CANONICAL_LABEL_COLUMN:
        mapping = CANONICAL_LABEL_MAPPING
    elif label_name == descriptor.label_column:
        mapping = descriptor.label_mapping
    else:
        raise DataError(
            f"{path}: last column must be {CANONICAL_LABEL_COLUMN!r} or "
            f"{descriptor.label_column!r}, got {label_name!r}"
        )
    if not rows:
        raise DataError(f"{path}: empty dataset (no data rows)")
    n, d = len(rows), descriptor.feature_count
    values = np.empty((n, d), dtype=np.float64)
    labels = np.empty(n, dtype=np.int8)
    for i, cells in enumerate(rows):
        if len(cells) != expected:
            raise DataError(
                f"{path}: row {i + 1} has {len(cells)} columns, expected {expected}"
            )
        for j in range(d):
            values[i, j] = _parse_cell(cells[j].strip(), i + 1, j, path)
        labels[i] = _map_label(cells[-1].strip(), mapping, i + 1, path)
    return FeatureMatrix(values, labels, descriptor)


def load_csv(path: str | Path, descriptor: DatasetDescriptor) -> FeatureMatrix:
    """Read a headered CSV into a FeatureMatrix.

    The label column must be last and named either "label" (canonical
    encoding) or the dataset's original label column name (raw encoding).
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"{path}: no such file")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        table = [row for row in reader if row]
    if not table:
        raise DataError(f"{path}: empty dataset (no header)")
    return _build_matrix(table[0], table[1:], descriptor, path)


def _strip_quotes(token: str) -> str:
    token = token.strip()
    if len(token) >= 2 and token[0] == token[-1] and token[0] in "'\"":
        return token[1:-1]
    return token


def load_arff(path: str | Path, descriptor: DatasetDescriptor) -> FeatureMatrix:
    """Read an ARFF file (attribute/data sections, dense rows only)."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"{path}: no such file")
    attributes: list[str] = []
    rows: list[list[str]] = []
    in_data = False
    for raw_line in path.read_text(encoding="utf-8").splitlines():
        line = raw_line.strip()
        if not line or line.startswith("%"):
            continue
        if in_data:
            if line.startswith("{"):
                raise DataError(f"{path}: sparse ARFF data is not supported")
            rows.append(next(csv.reader(io.StringIO(line))))
            continue
        lowered = line.lower()
        if lowered.startswith("@attribute"):
            rest = line.split(None, 1)[1] if len(line.split(None, 1)) > 1 else ""
            if not rest:
                raise DataError(f"{path}: malformed @attribute line: {line!r}")
            if rest[0] in "'\"":
                quote = rest[0]
                end = rest.find(quote, 1)
                if end < 0:
                    raise DataError(f"{path}: malformed @attribute line: {line!r}")
                attributes.append(rest[1:end])
            else:
                attributes.append(rest.split(None, 1)[0])
        elif lowered.startswith("@data"):
            in_data = True
        elif lowered.startswith("@relation"):
            continue
        elif line.startswith("@"):
            raise DataError(f"{path}: unsupported ARFF directive: {line!r}")
    if not attributes:
        raise DataError(f"{path}: no @attribute declarations found")
    header = [_strip_quotes(a) for a in attributes]
    return _build_matrix(header, rows, descriptor, path)


def load_table(path: str | Path, descriptor: DatasetDescriptor) -> FeatureMatrix:
    """Dispatch to the ARFF or CSV reader based on file content."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"{path}: no such file")
    if path.suffix.lower() == ".arff":
        return load_arff(path, descriptor)
    with path.open(encoding="utf-8") as fh:
        for line in fh:
            stripped = line.strip()
            if stripped:
                first = stripped
                break
        else:
            raise DataError(f"{path}: empty dataset (no header)")
    if first.startswith("@") or first.startswith("%"):
        return load_arff(path, descriptor)
    return load_csv(path, descriptor)


def _format_value(value: float, domain: str) -> str:
    if domain != CONTINUOUS and value == int(value):
        return str(int(value))
    return repr(float(value))


def csv_bytes(m: FeatureMatrix) -> bytes:
    """Canonical CSV encoding: feature columns, then a canonical label column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(m.descriptor.feature_names) + [CANONICAL_LABEL_COLUMN])
    domains = m.descriptor.value_domain
    for i in range(m.n_rows):
        row = [_format_value(m.values[i, j], domains[j]) for j in range(m.n_features)]
        row.append(str(int(m.labels[i])))
        writer.writerow(row)
    return buf.getvalue().encode("utf-8")


def write_csv(m: FeatureMatrix, path: str | Path) -> None:
    """Write the canonical CSV form (labels always -1/0/1, column "label")."""
    Path(path).write_bytes(csv_bytes(m))


TRAIN, TEST, VALIDATION = 0, 1, 2

_PART_NAMES = {"train": TRAIN, "test": TEST, "validation": VALIDATION}


@dataclass(frozen=True)
class SplitPlan:
    """Frozen assignment of every row to one partition."""

    kind: str  # "kfold" | "holdout" | "three_way"
    n_parts: int
    seed: int
    fold_assignments: np.ndarray

    def __post_init__(self) -> None:
        assignments = np.ascontiguousarray(self.fold_assignments, dtype=np.int32)
        assignments.setflags(write=False)
        object.__setattr__(self, "fold_assignments", assignments)

    def indices_of(self, part: int | str) -> np.ndarray:
        if isinstance(part, str):
            if part not in _PART_NAMES:
                raise ValueError(f"unknown partition name {part!r}")
            part = _PART_NAMES[part]
        if not 0 <= part < self.n_parts:
            raise ValueError(
                f"partition {part} out of range for a {self.n_parts}-part plan"
            )
        return np.flatnonzero(self.fold_assignments == part)

    def complement_of(self, part: int | str) -> np.ndarray:
        if isinstance(part, str):
            part = _PART_NAMES.get(part, -1)
        if not 0 <= part < self.n_parts:
            raise ValueError(
                f"partition {part} out of range for a {self.n_parts}-part plan"
            )
        return np.flatnonzero(self.fold_assignments != part)


def stratified_kfold(m: FeatureMatrix, k: int, seed: int) -> SplitPlan:
    """Stratified k folds: per class, shuffle then deal round-robin.

    Classes are dealt in ascending label order with a running fold offset, so
    per class and overall the fold sizes each differ by at most one.
    """
    if not 2 <= k <= m.n_rows:
        raise ValueError(f"k must be in [2, {m.n_rows}], got {k}")
    assign = np.empty(m.n_rows, dtype=np.int32)
    offset = 0
    for code in np.unique(m.labels):
        idx = np.flatnonzero(m.labels == code)
        if idx.size < k:
            warnings.warn(
                f"class {ClassLabel(int(code)).display_name} has {idx.size} rows, "
                f"fewer than k={k}; some folds will miss it",
                StratificationWarning,
                stacklevel=2,
            )
        rng = rng_from(seed, "kfold", k, int(code))
        shuffled = rng.permutation(idx)
        assign[shuffled] = (offset + np.arange(shuffled.size)) % k
        offset = (offset + shuffled.size) % k
    return SplitPlan("kfold", k, seed, assign)


def _stratified_boundaries(
    m: FeatureMatrix, fractions: tuple[float, ...], seed: int, kind: str
) -> SplitPlan:
    assign = np.empty(m.n_rows, dtype=np.int32)
    cum = np.cumsum(fractions)
    for code in np.unique(m.labels):
        idx = np.flatnonzero(m.labels == code)
        rng = rng_from(seed, kind, int(code))
        shuffled = rng.permutation(idx)
        bounds = np.floor(cum[:-1] * idx.size + 0.5).astype(int)
        parts = np.split(shuffled, bounds)
        for part_id, part_rows in enumerate(parts):
            assign[part_rows] = part_id
    return SplitPlan(kind, len(fractions), seed, assign)


def holdout(m: FeatureMatrix, train_frac: float, seed: int) -> SplitPlan:
    """Stratified train/test split; parts are TRAIN=0, TEST=1."""
    if not 0.0 < train_frac < 1.0:
        raise ValueError(f"train_frac must be in (0, 1), got {train_frac}")
    return _stratified_boundaries(m, (train_frac, 1.0 - train_frac), seed, "holdout")


def three_way(
    m: FeatureMatrix, fractions: tuple[float, float, float], seed: int
) -> SplitPlan:
    """Stratified train/test/validation split; parts 0/1/2."""
    if len(fractions) != 3 or any(f <= 0 for f in fractions):
        raise ValueError("three_way needs three positive fractions")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValueError(f"fractions must sum to 1, got {sum(fractions)}")
    return _stratified_boundaries(m, tuple(fractions), seed, "three_way")


def split(m: FeatureMatrix, plan: SplitPlan, part: int | str) -> FeatureMatrix:
    """Rows assigned to one partition, original row order preserved."""
    if plan.fold_assignments.shape[0] != m.n_rows:
        raise ValueError("plan was built for a different number of rows")
    return m.take(plan.indices_of(part))


def _apportion(n_rows: int, proportions: dict[ClassLabel, float]) -> dict[ClassLabel, int]:
    """Largest-remainder apportionment of n_rows among classes."""
    classes = sorted(proportions, key=int)
    shares = {c: n_rows * proportions[c] for c in classes}
    counts = {c: int(np.floor(shares[c])) for c in classes}
    short = n_rows - sum(counts.values())
    by_remainder = sorted(classes, key=lambda c: (counts[c] - shares[c], int(c)))
    for c in by_remainder[:short]:
        counts[c] += 1
    return counts


def generate_synthetic(
    descriptor: DatasetDescriptor,
    n_rows: int,
    seed: int = 0,
    separation: float = 0.8,
) -> FeatureMatrix:
    """Deterministic synthetic stand-in matching the descriptor's domains.

    separation=0 yields class-independent features; separation=1 yields
    strongly class-aligned features. Class proportions follow the
    descriptor's class_proportions (uniform over its classes otherwise).
    """
    if n_rows < 2:
        raise ValueError(f"n_rows must be at least 2, got {n_rows}")
    if not 0.0 <= separation <= 1.0:
        raise ValueError(f"separation must be in [0, 1], got {separation}")
    proportions = descriptor.class_proportions
    if not proportions:
        classes = descriptor.classes
        proportions = {c: 1.0 / len(classes) for c in classes}
    counts = _apportion(n_rows, proportions)
    classes = sorted(counts, key=int)
    rng = rng_from(seed, "synthetic", descriptor.id, n_rows)

    labels = np.concatenate(
        [np.full(counts[c], int(c), dtype=np.int8) for c in classes]
    )
    starts = {}
    pos = 0
    for c in classes:
        starts[c] = pos
        pos += counts[c]

    d = descriptor.feature_count
    values = np.empty((n_rows, d), dtype=np.float64)
    direction = rng.choice((-1.0, 1.0), size=d)
    weight = rng.uniform(0.5, 1.0, size=d)
    for j, domain in enumerate(descriptor.value_domain):
        tilt = 3.0 * separation * weight[j] * direction[j]
        if domain == TERNARY:
            support = np.array([-1.0, 0.0, 1.0])
            base = rng.normal(0.0, 0.5, size=3)
            for c in classes:
                logits = base + tilt * int(c) * support
                probs = np.exp(logits - logits.max())
                probs /= probs.sum()
                block = rng.choice(support, size=counts[c], p=probs)
                values[starts[c] : starts[c] + counts[c], j] = block
        elif domain == BINARY:
            base = rng.normal(0.0, 0.5)
            for c in classes:
                p_one = 1.0 / (1.0 + np.exp(-(base + tilt * int(c))))
                block = (rng.random(counts[c]) < p_one).astype(np.float64)
                values[starts[c] : starts[c] + counts[c], j] = block
        else:
            base = rng.normal(0.0, 1.0)
            for c in classes:
                shift = base + 0.5 * tilt * int(c)
                block = rng.normal(shift, 1.0, size=counts[c])
                values[starts[c] : starts[c] + counts[c], j] = block

    order = rng.permutation(n_rows)
    return FeatureMatrix(values[order], labels[order], descriptor)


def sniff_descriptor(path: str | Path) -> DatasetDescriptor:
    """Infer the schema of a delimited file from its header.

    Exact feature-name matches resolve to a builtin descriptor; any other
    header with a trailing canonical "label" column yields an ad-hoc
    descriptor with inferred value domains.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"{path}: no such file")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty dataset (no header)")
        sample = [row for _, row in zip(range(200), reader) if row]
    if header and header[0].strip().lower() == "id":
        header = header[1:]
        sample = [r[1:] for r in sample]
    names = tuple(h.strip() for h in header[:-1])
    for desc in BUILTIN_DESCRIPTORS.values():
        if names == desc.feature_names:
            return desc
    label_name = header[-1].strip() if header else ""
    if label_name != CANONICAL_LABEL_COLUMN:
        raise DataError(
            f"{path}: header matches no known dataset schema and the last "
            f"column is not {CANONICAL_LABEL_COLUMN!r}; run ingest first"
        )
    domains = []
    for j, _ in enumerate(names):
        seen = set()
        numeric = True
        for row in sample:
            if j >= len(row):
                continue
            try:
                seen.add(float(row[j]))
            except ValueError:
                numeric = False
                break
        if numeric and seen and seen <= {-1.0, 0.0, 1.0}:
            domains.append(BINARY if seen <= {0.0, 1.0} else TERNARY)
        else:
            domains.append(CONTINUOUS)
    return DatasetDescriptor(
        id=path.stem,
        feature_names=names,
        label_mapping=dict(CANONICAL_LABEL_MAPPING),
        value_domain=tuple(domains),
    )
