#include "esran/config_ini.hpp"

#include <fstream>
#include <sstream>

namespace esran::harness {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

IniFile IniFile::parse(const std::string& text) {
  IniFile ini;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw IniError("line " + std::to_string(lineNo) +
                       ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      ini.sections_[section];
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw IniError("line " + std::to_string(lineNo) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw IniError("line " + std::to_string(lineNo) + ": empty key");
    ini.sections_[section].push_back({key, value});
  }
  return ini;
}

IniFile IniFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IniError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return false;
  for (const auto& [k, v] : it->second)
    if (k == key) return true;
  return false;
}

std::string IniFile::get(const std::string& section,
                         const std::string& key) const {
  auto it = sections_.find(section);
  if (it != sections_.end()) {
    for (const auto& [k, v] : it->second)
      if (k == key) return v;
  }
  throw IniError("missing key '" + key + "' in section [" + section + "]");
}

std::string IniFile::get_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double IniFile::get_double(const std::string& section,
                           const std::string& key) const {
  const std::string v = get(section, key);
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (trim(v.substr(used)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw IniError("key '" + key + "' is not a number: " + v);
}

long long IniFile::get_int(const std::string& section,
                           const std::string& key) const {
  const std::string v = get(section, key);
  try {
    size_t used = 0;
    long long i = std::stoll(v, &used);
    if (trim(v.substr(used)).empty()) return i;
  } catch (const std::exception&) {
  }
  throw IniError("key '" + key + "' is not an integer: " + v);
}

bool IniFile::get_bool(const std::string& section,
                       const std::string& key) const {
  const std::string v = get(section, key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw IniError("key '" + key + "' is not a boolean: " + v);
}

std::vector<double> IniFile::get_list(const std::string& section,
                                      const std::string& key) const {
  std::string v = get(section, key);
  for (char& c : v)
    if (c == ',') c = ' ';
  std::istringstream in(v);
  std::vector<double> out;
  double d;
  while (in >> d) out.push_back(d);
  if (out.empty())
    throw IniError("key '" + key + "' holds no numbers");
  return out;
}

std::vector<std::string> IniFile::keys(const std::string& section) const {
  std::vector<std::string> out;
  auto it = sections_.find(section);
  if (it == sections_.end()) return out;
  for (const auto& [k, v] : it->second) out.push_back(k);
  return out;
}

bool IniFile::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

}  // namespace esran::harness
