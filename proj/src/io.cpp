#include "bce/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace bce {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("error writing '" + path + "'");
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t") == std::string::npos; }

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// First non-blank line must equal `header`; returns its index.
std::size_t expect_header(const std::vector<std::string>& lines, const std::string& header, const std::string& source) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    if (trimmed(lines[i]) != header) throw ParseError(source, i + 1, "expected header '" + header + "'");
    return i;
  }
  throw ParseError(source, 1, "empty input, expected header '" + header + "'");
}

std::size_t json_line(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, json_line(text, e.byte), std::string("invalid JSON: ") + e.what());
  }
}

double json_endpoint(const json& v, const std::string& source, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_double(v.get<std::string>());
    } catch (const InputError& e) {
      throw ParseError(source, 1, std::string(what) + ": " + e.what());
    }
  }
  throw ParseError(source, 1, std::string(what) + " must be a number or \"inf\"");
}

}  // namespace

Barcode parse_barcode(const std::string& text, const std::string& source) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j = parse_json(text, source);
    if (!j.contains("bars") || !j["bars"].is_array()) throw ParseError(source, 1, "JSON barcode needs a \"bars\" array");
    Barcode b;
    std::size_t k = 0;
    for (const auto& e : j["bars"]) {
      ++k;
      if (!e.is_object() || !e.contains("l") || !e.contains("r")) throw ParseError(source, 1, "bar " + std::to_string(k) + " needs \"l\" and \"r\"");
      double l = json_endpoint(e["l"], source, "l");
      double r = json_endpoint(e["r"], source, "r");
      bool open = e.contains("open") && e["open"].is_boolean() && e["open"].get<bool>();
      try {
        b.add(l, r, open);
      } catch (const InputError& err) {
        throw ParseError(source, 1, "bar " + std::to_string(k) + ": " + err.what());
      }
    }
    return b;
  }
  auto lines = split_lines(text);
  std::size_t h = expect_header(lines, "# barcode v1", source);
  Barcode b;
  for (std::size_t i = h + 1; i < lines.size(); ++i) {
    if (blank(lines[i]) || trimmed(lines[i])[0] == '#') continue;
    auto tk = tokens(lines[i]);
    if (tk.size() < 2 || tk.size() > 3 || (tk.size() == 3 && tk[2] != "o"))
      throw ParseError(source, i + 1, "expected '<left> <right|inf> [o]'");
    try {
      b.add(parse_double(tk[0]), parse_double(tk[1]), tk.size() == 3);
    } catch (const InputError& err) {
      throw ParseError(source, i + 1, err.what());
    }
  }
  return b;
}

Barcode read_barcode_file(const std::string& path) { return parse_barcode(read_text_file(path), path); }

std::string barcode_to_text(const Barcode& b, const std::vector<std::string>& comments) {
  std::string out = "# barcode v1\n";
  for (const auto& c : comments) out += "# " + c + "\n";
  for (const auto& bar : b.bars()) {
    out += format_double(bar.left);
    out += ' ';
    out += format_double(bar.right);
    if (bar.right_open) out += " o";
    out += '\n';
  }
  return out;
}

std::string barcode_to_json(const Barcode& b) {
  json bars = json::array();
  for (const auto& bar : b.bars()) {
    json e;
    e["l"] = bar.left;
    if (bar.infinite())
      e["r"] = "inf";
    else
      e["r"] = bar.right;
    e["open"] = bar.right_open;
    bars.push_back(e);
  }
  json j;
  j["bars"] = bars;
  return j.dump() + "\n";
}

namespace {

template <class V, class ParseValue>
FilteredComplexT<V> parse_complex_impl(const std::string& text, const std::string& source, ParseValue parse_value) {
  auto lines = split_lines(text);
  std::size_t h = expect_header(lines, "# fcomplex v1", source);
  std::vector<std::string> labels;
  std::vector<V> values;
  struct Bnd {
    std::size_t line;
    std::string label;
    std::vector<std::string> terms;
  };
  std::vector<Bnd> bnds;
  for (std::size_t i = h + 1; i < lines.size(); ++i) {
    if (blank(lines[i]) || trimmed(lines[i])[0] == '#') continue;
    auto tk = tokens(lines[i]);
    if (tk[0] == "gen") {
      if (tk.size() != 3) throw ParseError(source, i + 1, "expected 'gen <label> <action>'");
      labels.push_back(tk[1]);
      try {
        values.push_back(parse_value(tk[2]));
      } catch (const InputError& e) {
        throw ParseError(source, i + 1, e.what());
      }
    } else if (tk[0] == "bnd") {
      auto eq = lines[i].find('=');
      if (tk.size() < 3 || tk[2] != "=" || eq == std::string::npos) throw ParseError(source, i + 1, "expected 'bnd <label> = <label>+<label>+...'");
      Bnd b{i + 1, tk[1], {}};
      std::string rhs = lines[i].substr(eq + 1);
      std::string term;
      std::istringstream rs(rhs);
      while (std::getline(rs, term, '+')) {
        term = trimmed(term);
        if (term.empty()) {
          if (!blank(rhs)) throw ParseError(source, i + 1, "empty term in boundary");
          continue;
        }
        if (term.find_first_of(" \t") != std::string::npos) throw ParseError(source, i + 1, "terms must be joined by '+'");
        b.terms.push_back(term);
      }
      bnds.push_back(std::move(b));
    } else {
      throw ParseError(source, i + 1, "unknown directive '" + tk[0] + "'");
    }
  }
  OrthoSpaceT<V> space;
  try {
    space = OrthoSpaceT<V>(labels, values);
  } catch (const InputError& e) {
    throw ParseError(source, h + 1, e.what());
  }
  std::vector<F2Vec> cols(space.dim(), space.zero());
  std::vector<bool> seen(space.dim(), false);
  for (const auto& b : bnds) {
    if (!space.contains(b.label)) throw ParseError(source, b.line, "boundary of unknown generator '" + b.label + "'");
    std::size_t j = space.index_of(b.label);
    if (seen[j]) throw ParseError(source, b.line, "second boundary line for '" + b.label + "'");
    seen[j] = true;
    for (const auto& t : b.terms) {
      if (!space.contains(t)) throw ParseError(source, b.line, "unknown generator '" + t + "' in boundary");
      cols[j].flip(space.index_of(t));
    }
  }
  return FilteredComplexT<V>(std::move(space), std::move(cols));
}

template <class V, class Format>
std::string complex_to_text_impl(const FilteredComplexT<V>& c, Format fmt) {
  std::string out = "# fcomplex v1\n";
  const auto& s = c.space();
  for (std::size_t i = 0; i < s.dim(); ++i) out += "gen " + s.label(i) + " " + fmt(s.value(i)) + "\n";
  for (std::size_t j = 0; j < s.dim(); ++j) {
    if (c.boundary()[j].none()) continue;
    out += "bnd " + s.label(j) + " =";
    bool first = true;
    for (const auto& l : s.support_labels(c.boundary()[j])) {
      out += (first ? " " : "+") + l;
      first = false;
    }
    out += "\n";
  }
  return out;
}

}  // namespace

FilteredComplex parse_complex(const std::string& text, const std::string& source) {
  return parse_complex_impl<double>(text, source, [](const std::string& s) {
    double v = parse_double(s);
    if (!std::isfinite(v)) throw InputError("action must be finite, got '" + s + "'");
    return v;
  });
}

FilteredComplexQ parse_complex_rational(const std::string& text, const std::string& source) {
  return parse_complex_impl<Rational>(text, source, [](const std::string& s) { return parse_rational(s); });
}

std::string complex_to_text(const FilteredComplex& c) { return complex_to_text_impl(c, [](double v) { return format_double(v); }); }

std::string complex_to_text(const FilteredComplexQ& c) { return complex_to_text_impl(c, [](const Rational& v) { return format_rational(v); }); }

ReebSpectrum parse_spectrum(const std::string& text, const std::string& source) {
  json j = parse_json(text, source);
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) throw ParseError(source, 1, "spectrum JSON needs an \"entries\" array");
  std::vector<SpectrumEntry> entries;
  for (const auto& e : j["entries"]) {
    if (!e.is_object() || !e.contains("period") || !e["period"].is_number()) throw ParseError(source, 1, "entry needs a numeric \"period\"");
    SpectrumEntry se;
    se.period = e["period"].get<double>();
    if (e.contains("mult")) {
      if (!e["mult"].is_number_integer() || e["mult"].get<long long>() < 1) throw ParseError(source, 1, "\"mult\" must be a positive integer");
      se.mult = static_cast<std::size_t>(e["mult"].get<long long>());
    }
    entries.push_back(se);
  }
  std::optional<double> growth;
  if (j.contains("oracle_growth") && !j["oracle_growth"].is_null()) {
    if (!j["oracle_growth"].is_number()) throw ParseError(source, 1, "\"oracle_growth\" must be a number or null");
    growth = j["oracle_growth"].get<double>();
  }
  std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : std::string{};
  try {
    return ReebSpectrum(std::move(entries), growth, label);
  } catch (const InputError& e) {
    throw ParseError(source, 1, e.what());
  }
}

ReebSpectrum read_spectrum_file(const std::string& path) { return parse_spectrum(read_text_file(path), path); }

std::string spectrum_to_json(const ReebSpectrum& s) {
  std::string out = "{\"label\":" + json(s.label).dump() + ",\"oracle_growth\":" + (s.oracle_growth ? json(*s.oracle_growth).dump() : "null") +
                    ",\"entries\":[";
  bool first = true;
  for (const auto& e : s.entries()) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "{\"period\":" + json(e.period).dump() + ",\"mult\":" + std::to_string(e.mult) + "}";
  }
  out += "\n]}\n";
  return out;
}

}  // namespace bce
