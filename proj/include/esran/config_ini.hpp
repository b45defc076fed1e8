#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace esran::harness {

struct IniError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimal INI reader: [section] headers, key = value lines, # or ;
// comments. Keys keep file order within a section.
class IniFile {
 public:
  static IniFile parse(const std::string& text);
  static IniFile load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  long long get_int(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  // whitespace- or comma-separated numbers
  std::vector<double> get_list(const std::string& section,
                               const std::string& key) const;

  // ordered keys of one section (empty if the section is absent)
  std::vector<std::string> keys(const std::string& section) const;
  bool has_section(const std::string& section) const;

 private:
  std::map<std::string, std::vector<std::pair<std::string, std::string>>>
      sections_;
};

}  // namespace esran::harness
