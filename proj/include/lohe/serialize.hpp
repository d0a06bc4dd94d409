#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lohe/diagnostics.hpp"
#include "lohe/symbol.hpp"

namespace lohe {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Symbol file layout: {"size": [...], "coupling": [2^m strengths, first axis
/// most significant], "frequencies": [N of DxD rows of [re, im]],
/// "initial": [N of flat [re, im] lists]}.
nlohmann::json symbol_to_json(const CharacteristicSymbol& c);
CharacteristicSymbol symbol_from_json(const nlohmann::json& j);

CharacteristicSymbol load_symbol(const std::string& path);
void save_symbol(const CharacteristicSymbol& c, const std::string& path);

/// Header "t,..." with one column per field populated in the first record.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);
/// One-line "name=value" summary of the populated fields.
std::string record_summary(const DiagnosticsRecord& record);
/// One row per oscillator; flattened entries as re,im pairs.
std::string state_csv(const std::vector<DenseTensor>& state);

}  // namespace lohe
