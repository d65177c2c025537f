"""Lexical URL feature extraction for schema-compatible inference rows.

Only features derivable from the URL string itself are computed. Features
that require page content, DNS, WHOIS, or third-party reputation data are
filled with the suspicious/unknown sentinel 0 and listed in the row's
``unsupported`` set. Rows produced here are heuristic by construction and
are meant for inference on fresh URLs, not for benchmark reproduction.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from urllib.parse import urlsplit

from ._util import HeuristicFeatureWarning
from .data import CONTINUOUS, DataError, DatasetDescriptor

SENSITIVE_WORDS = (
    "secure", "account", "webscr", "login", "signin", "banking", "confirm"
)

# Two-level public suffixes the registered-domain rule recognizes beyond the
# default last-two-labels split. Full public-suffix handling is a non-goal.
_TWO_LEVEL_SUFFIXES = frozenset({
    "co.uk", "ac.uk", "gov.uk", "org.uk", "me.uk", "co.jp", "ne.jp",
    "or.jp", "ac.jp", "go.jp", "co.in", "ac.in", "gov.in", "com.au",
    "net.au", "org.au", "gov.au", "edu.au", "com.br", "com.cn", "com.mx",
    "com.tr", "com.ar", "com.sg", "com.hk", "com.tw", "com.my", "co.nz",
    "co.za", "co.kr",
})

# Generic and country-code labels that flag DomainInSubdomains when they
# appear as a subdomain label (a TLD embedded left of the registered domain).
_TLD_LABELS = frozenset({
    "com", "net", "org", "edu", "gov", "mil", "info", "biz",
    "uk", "us", "de", "fr", "cn", "ru", "br", "jp", "au", "in",
})

_CONSONANTS = frozenset("bcdfghjklmnpqrstvwxz")
_HOST_LABEL_RE = re.compile(r"[a-z0-9_-]+")
_IPV4_RE = re.compile(r"(\d{1,3})\.(\d{1,3})\.(\d{1,3})\.(\d{1,3})")

# schemes that never carry a host; everything else is retried as http://
_NON_HOST_SCHEMES = frozenset({
    "mailto", "javascript", "data", "tel", "urn", "about"
})


@dataclass(frozen=True)
class ParsedUrl:
    """Decomposed, normalized URL. Host is lowercase; reassembling the
    components with :meth:`normalized` reproduces the normalized input."""

    scheme: str
    host: str
    registered_domain: str
    subdomain_labels: tuple[str, ...]
    path: str
    query: str
    fragment: str
    is_ip_host: bool
    userinfo: str = ""
    port: int | None = None

    def normalized(self) -> str:
        host = f"[{self.host}]" if ":" in self.host else self.host
        parts = [self.scheme, "://"]
        if self.userinfo:
            parts += [self.userinfo, "@"]
        parts.append(host)
        if self.port is not None:
            parts.append(f":{self.port}")
        parts.append(self.path)
        if self.query:
            parts += ["?", self.query]
        if self.fragment:
            parts += ["#", self.fragment]
        return "".join(parts)


@dataclass(frozen=True)
class LexicalFeatureRow:
    """One extracted row. Key set equals the descriptor's feature names;
    features in ``unsupported`` carry the sentinel 0."""

    descriptor: DatasetDescriptor
    values: dict[str, float]
    unsupported: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        expected = set(self.descriptor.feature_names)
        got = set(self.values)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            raise ValueError(
                f"feature keys do not match descriptor "
                f"{self.descriptor.id}: missing {missing}, extra {extra}"
            )

    def ordered_values(self) -> list[float]:
        return [self.values[name] for name in self.descriptor.feature_names]


def _split_host(host: str) -> tuple[str, tuple[str, ...]]:
    """Return (registered_domain, subdomain_labels) for a non-IP host."""
    labels = host.split(".")
    if len(labels) == 1:
        return host, ()
    keep = 2
    if len(labels) >= 3 and ".".join(labels[-2:]) in _TWO_LEVEL_SUFFIXES:
        keep = 3
    keep = min(keep, len(labels))
    return ".".join(labels[-keep:]), tuple(labels[:-keep])


def _is_ipv4(host: str) -> bool:
    match = _IPV4_RE.fullmatch(host)
    return bool(match) and all(int(g) <= 255 for g in match.groups())


def _validate_host(host: str) -> None:
    for label in host.split("."):
        if not label or not _HOST_LABEL_RE.fullmatch(label):
            raise DataError(f"invalid host label {label!r} in {host!r}")
        if label.startswith("-") or label.endswith("-"):
            raise DataError(f"host label {label!r} must not start or end with '-'")


def parse_url(raw: str) -> ParsedUrl:
    """Decompose a URL, prepending http:// when no scheme is present.

    Raises DataError when no usable host can be recovered. A scheme other
    than http/https is a warning, not an error.
    """
    if not raw or not raw.strip():
        raise DataError("empty URL")
    raw = raw.strip()
    pieces = urlsplit(raw)
    if not pieces.netloc:
        explicit_scheme = pieces.scheme and raw[len(pieces.scheme):].startswith("://")
        if pieces.scheme in _NON_HOST_SCHEMES or explicit_scheme:
            raise DataError(f"URL {raw!r} has no host")
        # schemeless form such as example.com/path or example.com:8080
        pieces = urlsplit("http://" + raw)
    scheme = (pieces.scheme or "http").lower()
    if scheme not in ("http", "https"):
        warnings.warn(
            f"scheme {scheme!r} is outside the supported http/https set",
            HeuristicFeatureWarning,
            stacklevel=2,
        )
    host = pieces.hostname
    if not host:
        raise DataError(f"URL {raw!r} has no host")
    host = host.lower()
    try:
        port = pieces.port
    except ValueError as exc:
        raise DataError(f"URL {raw!r} has an invalid port") from exc
    userinfo = pieces.netloc.rpartition("@")[0]
    # a ':' inside the host means a bracketed IPv6 literal survived urlsplit
    is_ip = ":" in host or _is_ipv4(host)
    if is_ip:
        registered, subdomains = host, ()
    else:
        _validate_host(host)
        registered, subdomains = _split_host(host)
    return ParsedUrl(
        scheme=scheme,
        host=host,
        registered_domain=registered,
        subdomain_labels=subdomains,
        path=pieces.path,
        query=pieces.query,
        fragment=pieces.fragment,
        is_ip_host=is_ip,
        userinfo=userinfo,
        port=port,
    )


def _has_consonant_run(label: str, length: int = 5) -> bool:
    run = 0
    for ch in label:
        run = run + 1 if ch in _CONSONANTS else 0
        if run >= length:
            return True
    return False


def _path_level(path: str) -> int:
    return sum(1 for seg in path.split("/") if seg)


def _query_components(query: str) -> int:
    if not query:
        return 0
    return sum(1 for part in query.split("&") if part)


def _length_band(n: int) -> int:
    if n < 54:
        return 1
    if n <= 75:
        return 0
    return -1


def _subdomain_band(count: int) -> int:
    if count == 0:
        return 1
    if count == 1:
        return 0
    return -1


def _sensitive_word_count(u: ParsedUrl) -> int:
    haystack = (u.host + u.path).lower()
    return sum(haystack.count(word) for word in SENSITIVE_WORDS)


def _subdomain_level_band(count: int) -> int:
    if count <= 1:
        return 1
    if count == 2:
        return 0
    return -1


def _rules(u: ParsedUrl) -> dict[str, float]:
    """Rule table keyed by feature name, shared across dataset schemas."""
    url = u.normalized()
    registrable_label = u.registered_domain.split(".")[0]
    return {
        # counting and flag features over the normalized URL string
        "NumDots": url.count("."),
        "SubdomainLevel": len(u.subdomain_labels),
        "PathLevel": _path_level(u.path),
        "UrlLength": len(url),
        "NumDash": url.count("-"),
        "NumDashInHostname": u.host.count("-"),
        "AtSymbol": int("@" in url),
        "TildeSymbol": int("~" in url),
        "NumUnderscore": url.count("_"),
        "NumPercent": url.count("%"),
        "NumQueryComponents": _query_components(u.query),
        "NumAmpersand": url.count("&"),
        "NumHash": url.count("#"),
        "NumNumericChars": sum(ch.isdigit() for ch in url),
        "NoHttps": int(u.scheme != "https"),
        "RandomString": int(
            any(_has_consonant_run(label) for label in u.host.split("."))
        ),
        "IpAddress": int(u.is_ip_host),
        "DomainInSubdomains": int(
            any(label in _TLD_LABELS for label in u.subdomain_labels)
        ),
        "DomainInPaths": int(u.registered_domain in u.path.lower()),
        "HttpsInHostname": int("https" in u.host),
        "HostnameLength": len(u.host),
        "PathLength": len(u.path),
        "QueryLength": len(u.query),
        "DoubleSlashInPath": int("//" in u.path),
        "NumSensitiveWords": _sensitive_word_count(u),
        "SubdomainLevelRT": _subdomain_level_band(len(u.subdomain_labels)),
        "UrlLengthRT": _length_band(len(url)),
        # ternary-coded features shared by the 30- and 9-column schemas
        "having_At_Symbol": -1 if "@" in url else 1,
        "having_IP_Address": -1 if u.is_ip_host else 1,
        "URL_Length": _length_band(len(url)),
        "having_Sub_Domain": _subdomain_band(len(u.subdomain_labels)),
        "Prefix_Suffix": -1 if "-" in registrable_label else 1,
    }


def extract_features(
    u: ParsedUrl, target: DatasetDescriptor
) -> LexicalFeatureRow:
    """Compute the lexically derivable features of ``target``; the rest get
    the sentinel 0 and are reported in the row's unsupported set."""
    rules = _rules(u)
    values: dict[str, float] = {}
    unsupported: list[str] = []
    for name, domain in zip(target.feature_names, target.value_domain):
        if name in rules:
            value = rules[name]
            values[name] = float(value) if domain is CONTINUOUS else int(value)
        else:
            values[name] = 0.0 if domain is CONTINUOUS else 0
            unsupported.append(name)
    if unsupported:
        warnings.warn(
            f"{len(unsupported)} of {len(target.feature_names)} features in "
            f"{target.id} need page content or third-party data; "
            f"defaulted to 0: {', '.join(unsupported)}",
            HeuristicFeatureWarning,
            stacklevel=2,
        )
    return LexicalFeatureRow(
        descriptor=target, values=values, unsupported=tuple(unsupported)
    )


def extract_from_string(raw: str, target: DatasetDescriptor) -> LexicalFeatureRow:
    return extract_features(parse_url(raw), target)


def rows_to_csv(rows: list[LexicalFeatureRow]) -> str:
    """Descriptor-ordered CSV without a label column (inference input)."""
    if not rows:
        raise ValueError("no rows to render")
    descriptor = rows[0].descriptor
    for row in rows[1:]:
        if row.descriptor.id != descriptor.id:
            raise ValueError("all rows must share one descriptor")
    lines = [",".join(descriptor.feature_names)]
    for row in rows:
        cells = []
        for name, domain in zip(descriptor.feature_names, descriptor.value_domain):
            value = row.values[name]
            if domain is CONTINUOUS:
                cells.append(repr(float(value)))
            else:
                cells.append(str(int(value)))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
