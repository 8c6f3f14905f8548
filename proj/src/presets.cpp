#include "logbench/presets.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "presets_data.hpp"

namespace logbench {

std::map<std::string, Preset> parse_presets(const std::string& json_text,
                                            const std::string& source_name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::runtime_error(source_name + ": invalid preset JSON: " + e.what());
    }
    std::map<std::string, Preset> out;
    for (const auto& [name, body] : j.items()) {
        Preset p;
        p.name = name;
        if (body.contains("mapping")) {
            const auto& m = body["mapping"];
            p.mapping.case_column = m.value("case_column", "");
            p.mapping.activity_column = m.value("activity_column", "");
            p.mapping.timestamp_column = m.value("timestamp_column", "");
            p.mapping.timestamp_format = m.value("timestamp_format", "iso8601");
            std::string delim = m.value("delimiter", ",");
            if (delim.size() != 1)
                throw std::runtime_error(source_name + ": preset '" + name +
                                         "': delimiter must be one character");
            p.mapping.delimiter = delim[0];
        }
        if (body.contains("trim")) {
            const auto& t = body["trim"];
            if (t.contains("start_on_or_after"))
                p.trim_start = t["start_on_or_after"].get<std::string>();
            if (t.contains("end_on_or_before"))
                p.trim_end = t["end_on_or_before"].get<std::string>();
        }
        out.emplace(name, std::move(p));
    }
    return out;
}

const std::map<std::string, Preset>& builtin_presets() {
    static const std::map<std::string, Preset> presets =
        parse_presets(detail::kEmbeddedPresets, "builtin presets");
    return presets;
}

std::map<std::string, Preset> load_presets(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open preset file '" + file.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presets(buf.str(), file.filename().string());
}

const Preset& find_preset(const std::map<std::string, Preset>& presets, const std::string& name) {
    auto it = presets.find(name);
    if (it == presets.end()) {
        std::string known;
        for (const auto& [n, p] : presets) {
            if (!known.empty()) known += ", ";
            known += n;
        }
        throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

}  // namespace logbench
