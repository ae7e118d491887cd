#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lambda_store/scenario.hpp"

namespace lambda_store {

/// Key -> raw value overrides applied on top of a config document.
using Overrides = std::map<std::string, std::string>;

/// Parses a flat `section.key = value` document with `#` comments.
///
/// Omitted keys take the preset of `run.scenario`, or of `fallback` when the
/// document does not name one. Dipoles default to `auto` (derived from the
/// partial rate of the transition); `grid.nt` defaults to `auto` (last event
/// plus two probe lengths). Throws ConfigError naming the offending key.
ScenarioConfig parse_config(std::string_view text, ScenarioKind fallback,
                            const Overrides& overrides = {});

/// Serializes every key so that parse_config(emit_config(c)) == c.
std::string emit_config(const ScenarioConfig& config);

/// Documented keys in emission order.
const std::vector<std::string>& config_keys();

/// Splits `section.key=value`; throws ConfigError on a malformed item.
std::pair<std::string, std::string> parse_override(std::string_view item);

} // namespace lambda_store
