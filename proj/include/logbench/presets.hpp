#pragma once

// Dataset presets: column mapping plus the chronological trim bounds for
// the public BPIC exports. The source of truth is data/presets.json, which
// is embedded at build time; a user file can replace it.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logbench/event_log.hpp"

namespace logbench {

struct Preset {
    std::string name;
    ColumnMapping mapping;
    std::optional<std::string> trim_start;  // bound notation, e.g. "2010-10"
    std::optional<std::string> trim_end;
};

const std::map<std::string, Preset>& builtin_presets();
std::map<std::string, Preset> load_presets(const std::filesystem::path& file);
std::map<std::string, Preset> parse_presets(const std::string& json_text,
                                            const std::string& source_name);

// Throws with the list of known names when `name` is absent.
const Preset& find_preset(const std::map<std::string, Preset>& presets, const std::string& name);

}  // namespace logbench
