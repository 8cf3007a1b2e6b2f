#include "malle/group_db.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "malle/error.hpp"

namespace malle {

std::optional<Rational> GroupRecord::reference(std::string_view key) const {
  for (const auto& [k, v] : reference_values)
    if (k == key) return v;
  return std::nullopt;
}

const GroupRecord* GroupDatabase::find(std::string_view label) const {
  for (const auto& r : records)
    if (r.label == label) return &r;
  return nullptr;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Splits off the first whitespace-delimited word.
std::pair<std::string_view, std::string_view> split_word(std::string_view s) {
  s = trim(s);
  std::size_t i = 0;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return {s.substr(0, i), trim(s.substr(i))};
}

/// Degree encoded in an `nTd` label, if the label has that shape.
std::optional<int> label_degree(std::string_view label) {
  const auto t = label.find('T');
  if (t == 0 || t == std::string_view::npos || t + 1 == label.size()) return std::nullopt;
  for (std::size_t i = 0; i < label.size(); ++i)
    if (i != t && !std::isdigit(static_cast<unsigned char>(label[i]))) return std::nullopt;
  if (t > 6) return std::nullopt;
  return std::stoi(std::string(label.substr(0, t)));
}

}  // namespace

GroupDatabase parse_group_db(std::string_view text) {
  GroupDatabase db;
  std::set<std::string, std::less<>> labels;
  std::optional<GroupRecord> cur;
  std::vector<std::string> pending_gens;
  std::vector<int> pending_gen_lines;

  const auto finish = [&](int line_no) {
    GroupRecord& r = *cur;
    if (r.degree == 0) throw Error(ErrorCode::ParseError, "group " + r.label + " has no degree", line_no);
    if (r.generators.empty()) throw Error(ErrorCode::ParseError, "group " + r.label + " has no generators", line_no);
    PermutationGroup g = [&] {
      try {
        return r.group();
      } catch (const Error& e) {
        throw e.at_line(r.line);
      }
    }();
    if (!g.is_transitive())
      db.warnings.push_back("group " + r.label + " (line " + std::to_string(r.line) + ") is not transitive");
    db.records.push_back(std::move(r));
    cur.reset();
  };

  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto [key, rest] = split_word(line);
    if (key.empty()) continue;

    const auto parse_error = [&](const std::string& why) { return Error(ErrorCode::ParseError, why, line_no); };
    if (key == "group") {
      if (cur) throw parse_error("'group' inside an unterminated block");
      const auto [label, name] = split_word(rest);
      if (label.empty()) throw parse_error("'group' needs a label");
      if (labels.count(label)) throw Error(ErrorCode::DuplicateLabel, "label " + std::string(label) + " repeated", line_no);
      labels.emplace(label);
      cur.emplace();
      cur->label = std::string(label);
      cur->display_name = std::string(name);
      cur->line = line_no;
      continue;
    }
    if (!cur) throw parse_error("'" + std::string(key) + "' outside a group block");
    if (key == "degree") {
      if (cur->degree != 0) throw parse_error("degree given twice");
      if (rest.empty() || rest.size() > 6 || rest.find_first_not_of("0123456789") != std::string_view::npos)
        throw parse_error("degree must be a positive integer");
      const int n = std::stoi(std::string(rest));
      if (n < 1) throw parse_error("degree must be a positive integer");
      if (auto ld = label_degree(cur->label); ld && *ld != n)
        throw Error(ErrorCode::DegreeMismatch,
                    "label " + cur->label + " implies degree " + std::to_string(*ld) + ", got " + std::to_string(n),
                    line_no);
      cur->degree = n;
    } else if (key == "gen") {
      if (cur->degree == 0) throw parse_error("'gen' before 'degree'");
      try {
        cur->generators.push_back(parse_cycle_notation(rest, cur->degree));
      } catch (const Error& e) {
        throw e.at_line(line_no);
      }
    } else if (key == "ref") {
      const auto [name, value] = split_word(rest);
      if (name.empty() || value.empty() || value.find_first_of(" \t") != std::string_view::npos)
        throw parse_error("expected 'ref <key> <rational>'");
      try {
        cur->reference_values.emplace_back(std::string(name), parse_rational(value));
      } catch (const Error& e) {
        throw e.at_line(line_no);
      }
    } else if (key == "end") {
      if (!rest.empty()) throw parse_error("'end' takes no arguments");
      finish(line_no);
    } else {
      throw parse_error("unknown key '" + std::string(key) + "'");
    }
  }
  if (cur) throw Error(ErrorCode::ParseError, "group " + cur->label + " is missing 'end'", cur->line);
  return db;
}

GroupDatabase load_group_db(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open database " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group_db(buf.str());
}

std::string write_group_db(const std::vector<GroupRecord>& records) {
  std::ostringstream out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const GroupRecord& r = records[i];
    if (i) out << '\n';
    out << "group " << r.label;
    if (!r.display_name.empty()) out << ' ' << r.display_name;
    out << "\ndegree " << r.degree << '\n';
    for (const auto& g : r.generators) out << "gen " << g.to_cycle_string() << '\n';
    for (const auto& [k, v] : r.reference_values) out << "ref " << k << ' ' << to_string(v) << '\n';
    out << "end\n";
  }
  return out.str();
}

}  // namespace malle
