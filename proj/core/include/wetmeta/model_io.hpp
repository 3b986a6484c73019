#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wetmeta/design.hpp"
#include "wetmeta/ols.hpp"

namespace wetmeta {

/// A fitted model together with the schema that produced its design, enough
/// to transfer values without refitting.
struct SavedFit {
  RegressionFit fit;
  EncodingSchema schema;
};

std::string schema_to_json(const EncodingSchema& schema);
EncodingSchema schema_from_json(std::string_view text);
EncodingSchema load_schema(const std::filesystem::path& path);

std::string fit_to_json(const RegressionFit& fit, const EncodingSchema& schema);
SavedFit fit_from_json(std::string_view text);

void save_fit(const RegressionFit& fit, const EncodingSchema& schema,
              const std::filesystem::path& path);
SavedFit load_fit(const std::filesystem::path& path);

}  // namespace wetmeta
