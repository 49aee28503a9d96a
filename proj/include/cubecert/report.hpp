#pragma once

#include "cubecert/catalog.hpp"

#include <iosfwd>

namespace cubecert {

struct ReportMeta {
    std::uint64_t seed = 1;
    int trials = 64;
    bool strict = false;
};

// Face tables and verdicts in the style of the source derivation.
std::string render_text(const CatalogReport& report, const CertStore& store,
                        const HypothesisSet& H, const ReportMeta& meta);

// Stable-field-order JSON; the schema ships in schema/certificate.schema.json.
std::string render_json(const CatalogReport& report, const CertStore& store,
                        const HypothesisSet& H, const ReportMeta& meta);

std::string render_certificate_text(const CycleCert& cert);

} // namespace cubecert
