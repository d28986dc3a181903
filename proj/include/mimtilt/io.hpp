#pragma once

#include <string>
#include <utility>

#include "mimtilt/pmf.hpp"

namespace mimtilt {

/// Distribution JSON: {"labels": [...], "probs": [...]} or
/// {"labels": [...], "counts": [...]} with exactly one of probs/counts.
Pmf parse_distribution_json(const std::string& text);
Pmf load_distribution_json(const std::string& path);
std::string distribution_to_json(const Pmf& pmf);

/// Counts CSV: two columns `label,count`, header row required.
std::pair<Pmf, RawUsage> parse_counts_csv(const std::string& text);
std::pair<Pmf, RawUsage> load_counts_csv(const std::string& path);

std::string read_file(const std::string& path);

/// FNV-1a content hash, used to stamp sweep tables with their input.
std::uint64_t fnv1a_hash(const std::string& bytes);

}  // namespace mimtilt
