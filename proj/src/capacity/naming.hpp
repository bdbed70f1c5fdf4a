#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ldes/capacity_model.hpp"

namespace ldes::capacity {

/// Uppercase family prefix followed by a lowercase base-36 ordinal, so every
/// name fits the 8-character fixed MPS field.
std::string short_name(std::string_view prefix, std::size_t ordinal);

class ColumnFactory {
 public:
  explicit ColumnFactory(ModelArtifacts& model) : model_(model) {}

  VarId make(std::string_view prefix, std::string_view family, const std::string& asset, int hour,
             double lower, double upper);
  std::vector<VarId> series(std::string_view prefix, std::string_view family,
                            const std::string& asset, int hours);

 private:
  ModelArtifacts& model_;
  std::map<std::string, std::size_t> counters_;
};

class RowFactory {
 public:
  explicit RowFactory(ModelArtifacts& model) : model_(model) {}

  RowId make(std::string_view prefix, ConstraintTag tag, std::string description,
             lp::SparseRow row, lp::Relation relation, double rhs);

 private:
  ModelArtifacts& model_;
  std::map<std::string, std::size_t> counters_;
};

}  // namespace ldes::capacity
