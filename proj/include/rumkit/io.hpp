#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rumkit/rum.hpp"

namespace rumkit {

// Unreadable file, malformed JSON, or a document that does not match the
// schema (missing/ill-typed fields). Messages cite JSON paths.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally sound file whose content fails semantic validation (bad group,
// degenerate edges, non-isometric representation, ...).
struct FrameworkValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses, builds via the recipe named in each edge's constraint, validates.
SymmetricFramework parse_framework_file(const std::string& path);
SymmetricFramework parse_framework_text(const std::string& text);

std::string serialize_framework(const SymmetricFramework& fw);
void write_framework_file(const std::string& path, const SymmetricFramework& fw);

// "t1,t2,...;k1,k2,..." - free turns (decimals or fractions like 1/2), then
// torsion indices; either side may be empty.
Character parse_character(const GroupSpec& spec, const std::string& text);

// One row per sample: turn_1..turn_r, torsion_1..torsion_m, sigma_min,
// kernel_dim, in_spectrum.
void write_spectrum_csv(std::ostream& os, const GroupSpec& spec,
                        const std::vector<SpectrumSample>& samples);

// JSON list of {gamma: {free, torsion}, orbit, value_re, value_im}.
void write_flex_json(std::ostream& os, const SymmetricFramework& fw, const FlexField& flex);

}  // namespace rumkit
