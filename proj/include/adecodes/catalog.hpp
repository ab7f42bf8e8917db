#pragma once

// Named ancestor surfaces with their codes.

#include <optional>
#include <string>
#include <vector>

#include "adecodes/restrictions.hpp"

namespace adecodes {

struct CatalogEntry {
  std::string name;
  std::string description;
  SurfaceContext context;
  LabeledCode code;                     // strict code K
  std::optional<LabeledCode> extended;  // K', when known
  /// G_ab (+) Lambda_G for torus quotients.
  std::optional<FinAbGroup> covariant_group;
  std::string notes;
};

/// Sorted entry names.
const std::vector<std::string>& catalog_names();

/// Throws InputError (listing the names) for an unknown entry.
CatalogEntry catalog_get(const std::string& name);

}  // namespace adecodes
