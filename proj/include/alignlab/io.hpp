#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "alignlab/dataset.hpp"
#include "alignlab/synth.hpp"

namespace alignlab {

namespace fs = std::filesystem;
using Json = nlohmann::json;  // std::map-backed, so keys serialize sorted

// %.17g; non-finite values print as nan / inf / -inf.
std::string format_double(double v);

// Header c0,c1,... then one row per matrix row.
std::string csv_text(const Mat& m);
Mat parse_csv(const std::string& text, const std::string& origin = "<memory>");

// Write to a sibling temp file, then rename over path. Throws Io.
void write_atomic(const fs::path& path, const std::string& content);
std::string read_text(const fs::path& path);

void write_csv(const fs::path& path, const Mat& m);
Mat read_csv(const fs::path& path);

// Pretty-printed with two-space indent and a trailing newline.
void write_json(const fs::path& path, const Json& j);
Json read_json(const fs::path& path);

// Dataset directory: x1.csv, x2.csv, y1.csv, y2.csv, meta.json.
void write_dataset(const fs::path& dir, const Dataset& d, const Json& meta);
Dataset read_dataset(const fs::path& dir);

Json to_json(const SynthConfig& c);
SynthConfig synth_config_from_json(const Json& j);

}  // namespace alignlab
