#pragma once

// Config files are INI (`[section]`, `key = value`, `#`/`;` comments), read
// with CLI11's parser. CLI11 tokenises values on commas and blanks; the
// tokens are re-joined with commas before reaching apply_setting.

#include <fstream>
#include <istream>
#include <string>

#include "CLI11.hpp"
#include "swe/problem.hpp"

namespace swe::tools {

inline ProblemConfig load_config(std::istream& in, ProblemConfig cfg = {}) {
  const CLI::ConfigINI ini;
  for (const CLI::ConfigItem& item : ini.from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string value;
    for (const auto& tok : item.inputs) {
      if (!value.empty()) value += ',';
      value += tok;
    }
    apply_setting(cfg, item.fullname(), value);
  }
  return cfg;
}

inline ProblemConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config '" + path + "'");
  ProblemConfig cfg = load_config(in);
  if (cfg.name == "custom") {
    const auto slash = path.find_last_of('/');
    std::string stem = path.substr(slash == std::string::npos ? 0 : slash + 1);
    if (const auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
    cfg.name = stem;
  }
  return cfg;
}

}  // namespace swe::tools
