#pragma once

#include <string>
#include <utility>
#include <vector>

#include "breatherlab/evolve.hpp"
#include "breatherlab/functionals.hpp"
#include "breatherlab/variation.hpp"

namespace breatherlab::report {

using MetaList = std::vector<std::pair<std::string, std::string>>;

/// Deterministic shortest-roundtrip formatting ("%.17g"); identical doubles
/// always produce identical text.
std::string format_double(double v);

std::string to_json(const functionals::FunctionalReport& r, const MetaList& meta = {});
std::string to_json(const variation::ResidualReport& r, const MetaList& meta = {});
std::string to_json(const variation::HessianRestriction& h, const MetaList& meta = {});
std::string to_json(const evolve::DiagnosticSeries& s, const MetaList& meta = {});

/// CSV with '#'-prefixed metadata lines, a header row, one record per row.
std::string diagnostics_csv(const evolve::DiagnosticSeries& s, const std::vector<int>& tracked,
                            const MetaList& meta = {});
std::string field_csv(const ComplexField& f, const MetaList& meta = {});
std::string matrix_csv(const SymmetricMatrix& m);

}  // namespace breatherlab::report
