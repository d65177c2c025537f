"""URL parsing and lexical feature extraction."""

import warnings

import pytest

from phishbench._util import HeuristicFeatureWarning
from phishbench.data import DataError, descriptor_by_id
from phishbench.urlfeatures import (
    LexicalFeatureRow,
    extract_from_string,
    parse_url,
    rows_to_csv,
)

D1 = descriptor_by_id("d1")
D2 = descriptor_by_id("d2")
D3 = descriptor_by_id("d3")


def _row(raw: str, descriptor):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HeuristicFeatureWarning)
        return extract_from_string(raw, descriptor)


def _values(raw: str, descriptor=D1) -> dict:
    return _row(raw, descriptor).values


class TestParseUrl:
    def test_decomposes_nested_subdomains(self):
        u = parse_url("http://a.b.example.com/files?q=1#top")
        assert u.scheme == "http"
        assert u.host == "a.b.example.com"
        assert u.registered_domain == "example.com"
        assert u.subdomain_labels == ("a", "b")
        assert u.path == "/files"
        assert u.query == "q=1"
        assert u.fragment == "top"
        assert not u.is_ip_host

    def test_schemeless_input_defaults_to_http(self):
        u = parse_url("example.com/login")
        assert u.scheme == "http"
        assert u.host == "example.com"
        assert u.normalized() == "http://example.com/login"

    def test_schemeless_path_may_embed_another_url(self):
        u = parse_url("example.com/redirect?u=http://x.com")
        assert u.host == "example.com"
        assert u.query == "u=http://x.com"

    def test_schemeless_host_with_port(self):
        u = parse_url("example.com:8080/path")
        assert u.host == "example.com"
        assert u.port == 8080
        assert u.normalized() == "http://example.com:8080/path"

    def test_ipv4_host_detected(self):
        u = parse_url("http://192.168.1.1/admin")
        assert u.is_ip_host
        assert u.registered_domain == "192.168.1.1"
        assert u.subdomain_labels == ()

    def test_out_of_range_octets_are_not_an_ip(self):
        assert not parse_url("http://999.168.1.1/").is_ip_host

    def test_ipv6_host_detected_and_reassembled(self):
        u = parse_url("http://[::1]:8080/x")
        assert u.is_ip_host
        assert u.normalized() == "http://[::1]:8080/x"

    def test_two_level_suffix_keeps_three_labels(self):
        u = parse_url("http://www.shop.example.co.uk/")
        assert u.registered_domain == "example.co.uk"
        assert u.subdomain_labels == ("www", "shop")

    def test_userinfo_survives_normalization(self):
        u = parse_url("http://user:pw@example.com/a")
        assert u.userinfo == "user:pw"
        assert u.normalized() == "http://user:pw@example.com/a"

    def test_host_is_lowercased(self):
        assert parse_url("http://EXAMPLE.Com/Path").host == "example.com"

    def test_normalized_is_idempotent(self):
        urls = [
            "https://a.b.example.com/x?q=1&r=2#frag",
            "example.com",
            "http://user@example.co.uk:81/p/q",
            "http://192.168.1.1/",
        ]
        for raw in urls:
            once = parse_url(raw).normalized()
            assert parse_url(once).normalized() == once

    def test_unparseable_strings_rejected(self):
        for raw in ("not a url", "", "   ", "http://", "mailto:u@example.com"):
            with pytest.raises(DataError):
                parse_url(raw)

    def test_invalid_ports_rejected(self):
        with pytest.raises(DataError):
            parse_url("http://example.com:999999/")
        with pytest.raises(DataError):
            parse_url("http://example.com:abc/")

    def test_bad_host_labels_rejected(self):
        with pytest.raises(DataError):
            parse_url("http://exa mple.com/")
        with pytest.raises(DataError):
            parse_url("http://-bad.example.com/")

    def test_non_http_scheme_warns_but_parses(self):
        with pytest.warns(HeuristicFeatureWarning):
            u = parse_url("ftp://files.example.com/pub")
        assert u.scheme == "ftp"
        assert u.host == "files.example.com"


class TestCountingFeatures:
    def test_underscore_and_symbol_counts(self):
        v = _values("http://www.example.com/path_to_page")
        assert v["NumUnderscore"] == 2
        assert v["AtSymbol"] == 0
        assert v["NumDots"] == 2
        assert v["PathLevel"] == 1

    def test_tilde_percent_and_sensitive_words(self):
        v = _values("https://secure-login.example/~u?id=5%20")
        assert v["TildeSymbol"] == 1
        assert v["NumPercent"] == 1
        assert v["NumSensitiveWords"] == 2
        assert v["NoHttps"] == 0
        assert v["NumDash"] == 1
        assert v["NumDashInHostname"] == 1

    def test_query_accounting(self):
        v = _values("http://example.com/s?a=1&b=2&c=3")
        assert v["NumQueryComponents"] == 3
        assert v["NumAmpersand"] == 2
        assert v["QueryLength"] == len("a=1&b=2&c=3")

    def test_numeric_chars_counted_across_url(self):
        v = _values("http://example42.com/a1/b2?x=9")
        assert v["NumNumericChars"] == 5

    def test_ip_address_flags(self):
        v = _values("http://192.168.1.1/admin")
        assert v["IpAddress"] == 1
        v2 = _values("http://example.com/")
        assert v2["IpAddress"] == 0

    def test_embedded_tld_and_domain_in_path(self):
        v = _values("http://paypal.com.evil.example/example.com/x")
        assert v["DomainInSubdomains"] == 1
        v2 = _values("http://a.example.com/example.com/x")
        assert v2["DomainInPaths"] == 1

    def test_https_in_hostname_trick(self):
        assert _values("http://https-example.com/")["HttpsInHostname"] == 1
        assert _values("https://example.com/")["HttpsInHostname"] == 0

    def test_double_slash_in_path(self):
        assert _values("http://example.com/a//b")["DoubleSlashInPath"] == 1
        assert _values("http://example.com/a/b")["DoubleSlashInPath"] == 0

    def test_consonant_run_marks_random_string(self):
        assert _values("http://bcdfgx.example.com/")["RandomString"] == 1
        assert _values("http://example.com/")["RandomString"] == 0

    def test_length_features_measure_normalized_url(self):
        raw = "example.com/abc"
        v = _values(raw)
        assert v["UrlLength"] == len("http://" + raw)
        assert v["HostnameLength"] == len("example.com")
        assert v["PathLength"] == len("/abc")


class TestTernaryBands:
    def _url_of_length(self, n: int) -> str:
        stem = "http://example.com/"
        return stem + "a" * (n - len(stem))

    @pytest.mark.parametrize(
        "length,expected", [(53, 1), (54, 0), (75, 0), (76, -1)]
    )
    def test_url_length_band_boundaries(self, length, expected):
        raw = self._url_of_length(length)
        v = _values(raw, D2)
        assert len(parse_url(raw).normalized()) == length
        assert v["URL_Length"] == expected

    def test_subdomain_band(self):
        assert _values("http://example.com/", D2)["having_Sub_Domain"] == 1
        assert _values("http://www.example.com/", D2)["having_Sub_Domain"] == 0
        assert (
            _values("http://paypal.com.evil.example/", D2)["having_Sub_Domain"]
            == -1
        )

    def test_subdomain_level_bands_in_wide_schema(self):
        assert _values("http://www.example.com/")["SubdomainLevelRT"] == 1
        assert _values("http://a.b.example.com/")["SubdomainLevelRT"] == 0
        assert _values("http://a.b.c.example.com/")["SubdomainLevelRT"] == -1

    def test_at_symbol_and_ip_ternaries(self):
        v = _values("http://user@192.168.1.1/", D2)
        assert v["having_At_Symbol"] == -1
        assert v["having_IP_Address"] == -1
        v2 = _values("http://example.com/", D2)
        assert v2["having_At_Symbol"] == 1
        assert v2["having_IP_Address"] == 1

    def test_prefix_suffix_checks_registrable_label(self):
        assert _values("http://secure-login.example/", D2)["Prefix_Suffix"] == -1
        assert _values("http://www-mirror.example.com/", D2)["Prefix_Suffix"] == 1


class TestRowContracts:
    def test_key_sets_match_each_schema(self):
        for descriptor in (D1, D2, D3):
            row = _row("http://www.example.com/login", descriptor)
            assert set(row.values) == set(descriptor.feature_names)
            assert len(row.ordered_values()) == descriptor.feature_count

    def test_unsupported_features_default_to_zero_with_warning(self):
        with pytest.warns(HeuristicFeatureWarning, match="page content"):
            row = extract_from_string("http://www.example.com/", D2)
        assert len(row.unsupported) == 25
        for name in row.unsupported:
            assert row.values[name] == 0

    def test_wide_schema_supports_most_lexical_features(self):
        row = _row("http://www.example.com/", D1)
        assert len(row.unsupported) == 21
        assert "PctExtHyperlinks" in row.unsupported
        assert "NumDots" not in row.unsupported

    def test_ternary_schemas_stay_in_domain(self):
        for descriptor in (D2, D3):
            row = _row("https://user@a.b.evil-site.example.co.uk/secure%20", descriptor)
            assert set(row.ordered_values()) <= {-1, 0, 1}

    def test_mismatched_keys_rejected(self):
        with pytest.raises(ValueError, match="feature keys"):
            LexicalFeatureRow(descriptor=D3, values={"SFH": 1})

    def test_extraction_is_deterministic(self):
        a = _row("http://www.example.com/login", D1)
        b = _row("http://www.example.com/login", D1)
        assert a.values == b.values


class TestCsvOutput:
    def test_header_and_order_follow_descriptor(self):
        rows = [
            _row("http://example.com/", D3),
            _row("http://192.168.1.1/x", D3),
        ]
        text = rows_to_csv(rows)
        lines = text.strip().splitlines()
        assert lines[0] == ",".join(D3.feature_names)
        assert len(lines) == 3
        first = dict(zip(D3.feature_names, lines[1].split(",")))
        assert first["having_IP_Address"] == "1"
        second = dict(zip(D3.feature_names, lines[2].split(",")))
        assert second["having_IP_Address"] == "-1"

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            rows_to_csv([])

    def test_mixed_descriptors_rejected(self):
        with pytest.raises(ValueError):
            rows_to_csv([_row("http://example.com/", D2),
                         _row("http://example.com/", D3)])
