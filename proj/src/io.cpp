#include "fairassign/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fairassign/errors.hpp"
#include "fairassign/rng.hpp"

namespace fairassign::io {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    // trim surrounding whitespace
    const auto begin = field.find_first_not_of(" \t\r");
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos
                         ? std::string()
                         : field.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

json parse_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw InputError("file is not valid JSON");
  return doc;
}

Rat parse_rational_field(const json& value, const std::string& where) {
  if (value.is_number_integer()) {
    return Rat(static_cast<long>(value.get<long long>()));
  }
  if (value.is_string()) {
    if (auto r = rat_from_string(value.get<std::string>())) return *r;
  }
  throw InputError("expected an exact rational (\"p/q\" string or integer) at " +
                   where);
}

std::vector<std::string> string_array(const json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw InputError("missing array field '" + key + "'");
  }
  std::vector<std::string> out;
  for (const auto& item : doc[key]) {
    if (!item.is_string()) {
      throw InputError("field '" + key + "' must contain strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

Problem problem_from_json(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw InputError("problem file must be a JSON object");
  std::vector<std::string> agents = string_array(doc, "agents");
  std::vector<std::string> objects = string_array(doc, "objects");
  if (agents.size() != objects.size()) {
    throw InputError("problem is not square: " + std::to_string(agents.size()) +
                     " agents vs " + std::to_string(objects.size()) +
                     " objects");
  }
  if (!doc.contains("preferences") || !doc["preferences"].is_object()) {
    throw InputError("missing object field 'preferences'");
  }
  std::vector<std::vector<std::string>> prefs;
  for (const std::string& agent : agents) {
    if (!doc["preferences"].contains(agent)) {
      throw InputError("no preference list for agent '" + agent + "'");
    }
    const json& list = doc["preferences"][agent];
    if (!list.is_array()) {
      throw InputError("preference list of agent '" + agent +
                       "' must be an array");
    }
    std::vector<std::string> row;
    for (const auto& item : list) {
      if (!item.is_string()) {
        throw InputError("preference list of agent '" + agent +
                         "' must contain object names");
      }
      row.push_back(item.get<std::string>());
    }
    prefs.push_back(std::move(row));
  }
  PreferenceProfile profile =
      PreferenceProfile::from_names(std::move(agents), std::move(objects), prefs);

  std::optional<rules::CardinalUtilityProfile> utilities;
  if (doc.contains("utilities")) {
    if (!doc["utilities"].is_object()) {
      throw InputError("field 'utilities' must be an object");
    }
    const int n = profile.size();
    std::vector<std::vector<Rat>> u(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i) {
      const std::string& agent = profile.agent_names()[i];
      if (!doc["utilities"].contains(agent)) {
        throw InputError("no utilities for agent '" + agent + "'");
      }
      const json& row = doc["utilities"][agent];
      for (int o = 0; o < n; ++o) {
        const std::string& object = profile.object_names()[o];
        if (!row.contains(object)) {
          throw InputError("agent '" + agent + "' has no utility for object '" +
                           object + "'");
        }
        u[i][o] = parse_rational_field(row[object],
                                       "utilities." + agent + "." + object);
      }
    }
    utilities.emplace(profile, std::move(u));
  }
  return {std::move(profile), std::move(utilities)};
}

Problem problem_from_csv(const std::string& text) {
  // Header names the object universe ("agent,<o1>,...,<on>"); each data row
  // is one agent's ranking, best to worst.
  const std::vector<std::string> lines = csv_lines(text);
  if (lines.size() < 2) {
    throw InputError("preference CSV needs a header row and one row per agent");
  }
  const std::vector<std::string> header = split_csv_line(lines[0]);
  if (header.empty() || header[0] != "agent") {
    throw InputError(
        "preference CSV header must be 'agent' followed by the object names");
  }
  const std::vector<std::string> objects(header.begin() + 1, header.end());
  const int n = static_cast<int>(lines.size()) - 1;
  if (static_cast<int>(objects.size()) != n) {
    throw InputError("problem is not square: " + std::to_string(n) +
                     " agent rows vs " + std::to_string(objects.size()) +
                     " header objects");
  }
  std::vector<std::string> agents;
  std::vector<std::vector<std::string>> prefs;
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> fields = split_csv_line(lines[i + 1]);
    if (static_cast<int>(fields.size()) != n + 1) {
      throw InputError("row for agent '" +
                       (fields.empty() ? std::to_string(i + 1) : fields[0]) +
                       "' has " + std::to_string(fields.size() - 1) +
                       " entries, expected " + std::to_string(n));
    }
    agents.push_back(fields[0]);
    prefs.emplace_back(fields.begin() + 1, fields.end());
  }
  PreferenceProfile profile =
      PreferenceProfile::from_names(std::move(agents), objects, prefs);
  return {std::move(profile), std::nullopt};
}

}  // namespace

std::optional<Format> format_from_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return std::nullopt;
  const std::string ext = path.substr(dot + 1);
  if (ext == "json") return Format::Json;
  if (ext == "csv") return Format::Csv;
  return std::nullopt;
}

Problem parse_problem_text(const std::string& text, Format format) {
  return format == Format::Json ? problem_from_json(text)
                                : problem_from_csv(text);
}

Problem parse_problem_file(const std::string& path,
                           std::optional<Format> format) {
  if (!format) format = format_from_path(path);
  if (!format) {
    throw InputError("cannot infer format of '" + path +
                     "'; use a .json or .csv extension or pass --format");
  }
  return parse_problem_text(read_file(path), *format);
}

std::string emit_problem(const PreferenceProfile& profile, Format format) {
  const int n = profile.size();
  if (format == Format::Json) {
    json doc;
    doc["schema"] = 1;
    doc["agents"] = profile.agent_names();
    doc["objects"] = profile.object_names();
    json prefs = json::object();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int r = 1; r <= n; ++r) {
        row.push_back(profile.object_names()[profile.object_at_rank(i, r)]);
      }
      prefs[profile.agent_names()[i]] = std::move(row);
    }
    doc["preferences"] = std::move(prefs);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "agent";
  for (const std::string& o : profile.object_names()) out << "," << o;
  out << "\n";
  for (int i = 0; i < n; ++i) {
    out << profile.agent_names()[i];
    for (int r = 1; r <= n; ++r) {
      out << "," << profile.object_names()[profile.object_at_rank(i, r)];
    }
    out << "\n";
  }
  return out.str();
}

Assignment parse_assignment_text(const std::string& text, Format format) {
  if (format == Format::Json) {
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("matrix") ||
        !doc["matrix"].is_array()) {
      throw InputError("assignment file must carry a 'matrix' array");
    }
    std::vector<std::vector<Rat>> matrix;
    int row_idx = 0;
    for (const auto& row : doc["matrix"]) {
      if (!row.is_array()) {
        throw InputError("matrix row " + std::to_string(row_idx) +
                         " is not an array");
      }
      std::vector<Rat> vals;
      int col = 0;
      for (const auto& cell : row) {
        vals.push_back(parse_rational_field(
            cell, "matrix[" + std::to_string(row_idx) + "][" +
                      std::to_string(col++) + "]"));
      }
      matrix.push_back(std::move(vals));
      ++row_idx;
    }
    return Assignment(std::move(matrix));
  }
  const std::vector<std::string> lines = csv_lines(text);
  if (lines.size() < 2) throw InputError("assignment CSV is empty");
  const int n = static_cast<int>(lines.size()) - 1;
  std::vector<std::vector<Rat>> matrix;
  for (int i = 0; i < n; ++i) {
    const std::vector<std::string> fields = split_csv_line(lines[i + 1]);
    if (static_cast<int>(fields.size()) != n + 1) {
      throw InputError("assignment CSV row " + std::to_string(i + 1) +
                       " has the wrong width");
    }
    std::vector<Rat> vals;
    for (int o = 0; o < n; ++o) {
      auto r = rat_from_string(fields[o + 1]);
      if (!r) {
        throw InputError("assignment CSV row " + std::to_string(i + 1) +
                         " holds a malformed rational '" + fields[o + 1] + "'");
      }
      vals.push_back(std::move(*r));
    }
    matrix.push_back(std::move(vals));
  }
  return Assignment(std::move(matrix));
}

Assignment parse_assignment_file(const std::string& path,
                                 std::optional<Format> format) {
  if (!format) format = format_from_path(path);
  if (!format) {
    throw InputError("cannot infer format of '" + path +
                     "'; use a .json or .csv extension or pass --format");
  }
  return parse_assignment_text(read_file(path), *format);
}

std::string emit_assignment(const std::vector<std::string>& agents,
                            const std::vector<std::string>& objects,
                            const Assignment& x, Format format) {
  const int n = x.size();
  if (static_cast<int>(agents.size()) != n ||
      static_cast<int>(objects.size()) != n) {
    throw InputError("name lists do not match the assignment size");
  }
  if (format == Format::Json) {
    json doc;
    doc["schema"] = 1;
    doc["agents"] = agents;
    doc["objects"] = objects;
    json matrix = json::array();
    json decimal = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array(), drow = json::array();
      for (int o = 0; o < n; ++o) {
        row.push_back(rat_to_string(x.at(i, o)));
        drow.push_back(rat_to_decimal(x.at(i, o)));
      }
      matrix.push_back(std::move(row));
      decimal.push_back(std::move(drow));
    }
    doc["matrix"] = std::move(matrix);
    doc["matrix_decimal"] = std::move(decimal);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "agent";
  for (const std::string& o : objects) out << "," << o;
  out << "\n";
  for (int i = 0; i < n; ++i) {
    out << agents[i];
    for (int o = 0; o < n; ++o) out << "," << rat_to_string(x.at(i, o));
    out << "\n";
  }
  return out.str();
}

PreferenceProfile generate(int n, GenerateModel model, std::uint64_t seed,
                           const std::vector<double>& weights) {
  if (n < 1) throw InputError("generator needs n >= 1");
  std::vector<double> w = weights;
  if (model == GenerateModel::PlackettLuce) {
    if (w.empty()) w.assign(n, 1.0);
    if (static_cast<int>(w.size()) != n) {
      throw InputError("need one weight per object");
    }
    for (double v : w) {
      if (!(v > 0)) throw InputError("weights must be positive");
    }
  }

  std::vector<std::string> agents, objects;
  for (int i = 1; i <= n; ++i) {
    agents.push_back("i" + std::to_string(i));
    objects.push_back("o" + std::to_string(i));
  }

  Rng rng(seed);
  std::vector<std::vector<int>> prefs(n);
  for (int i = 0; i < n; ++i) {
    if (model == GenerateModel::Uniform) {
      prefs[i] = rng.permutation(n);
      continue;
    }
    // Plackett-Luce: draw without replacement, proportional to weight.
    std::vector<int> pool(n);
    for (int o = 0; o < n; ++o) pool[o] = o;
    std::vector<double> pw = w;
    std::vector<int> order;
    while (!pool.empty()) {
      double total = 0;
      for (std::size_t j = 0; j < pool.size(); ++j) total += pw[j];
      double draw = rng.unit() * total;
      std::size_t pick = 0;
      for (; pick + 1 < pool.size(); ++pick) {
        if (draw < pw[pick]) break;
        draw -= pw[pick];
      }
      order.push_back(pool[pick]);
      pool.erase(pool.begin() + pick);
      pw.erase(pw.begin() + pick);
    }
    prefs[i] = std::move(order);
  }
  return PreferenceProfile(std::move(agents), std::move(objects),
                           std::move(prefs));
}

}  // namespace fairassign::io
