#include "hsd/model_file.hpp"

#include "hsd/algebra.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace hsd {

ModelFileError::ModelFileError(std::string source, int line, int column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

const SystemSpec* ModelFile::find_system(std::string_view name) const {
  for (const auto& s : systems)
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

class LineParser {
 public:
  LineParser(std::string_view text, std::string source) : source_(std::move(source)) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = text.find('\n', start);
      lines_.emplace_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  }

  ModelFile parse() {
    ModelFile file;
    auto header = next();
    if (!header) fail(1, 1, "empty input, expected 'hsdcert-model 1'");
    expect_arity(*header, 2, "hsdcert-model <version>");
    if ((*header)[0].text != "hsdcert-model") fail((*header)[0], "expected 'hsdcert-model 1'");
    file.version = parse_int((*header)[1]);
    if (file.version != 1) fail((*header)[1], "unsupported format version " + (*header)[1].text);

    std::set<std::string> names;
    while (auto tokens = next()) {
      const Token& head = (*tokens)[0];
      expect_arity(*tokens, 2, head.text + " <name>");
      if (!names.insert((*tokens)[1].text).second) fail((*tokens)[1], "duplicate name '" + (*tokens)[1].text + "'");
      if (head.text == "system")
        file.systems.push_back(parse_system((*tokens)[1].text));
      else if (head.text == "composite")
        file.composites.push_back(parse_composite((*tokens)[1].text, file));
      else
        fail(head, "expected 'system' or 'composite', found '" + head.text + "'");
    }
    return file;
  }

 private:
  std::string source_;
  std::vector<std::string_view> lines_;
  std::size_t line_index_ = 0;

  int line_no() const { return static_cast<int>(line_index_); }

  [[noreturn]] void fail(int line, int column, const std::string& message) const {
    throw ModelFileError(source_, line, column, message);
  }
  [[noreturn]] void fail(const Token& at, const std::string& message) const { fail(line_no(), at.column, message); }

  // Next non-blank line, split into tokens; bracketed arrays are single tokens.
  std::optional<std::vector<Token>> next() {
    while (line_index_ < lines_.size()) {
      const std::string_view line = lines_[line_index_++];
      std::vector<Token> tokens;
      std::size_t i = 0;
      while (i < line.size()) {
        const char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
          ++i;
          continue;
        }
        const std::size_t start = i;
        if (c == '[') {
          const std::size_t close = line.find(']', i);
          if (close == std::string_view::npos) fail(line_no(), static_cast<int>(start) + 1, "unterminated '['");
          i = close + 1;
        } else {
          while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#' && line[i] != '[') ++i;
        }
        tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
      }
      if (!tokens.empty()) return tokens;
    }
    return std::nullopt;
  }

  void expect_arity(const std::vector<Token>& tokens, std::size_t n, const std::string& usage) const {
    if (tokens.size() < n) fail(line_no(), tokens.back().column + static_cast<int>(tokens.back().text.size()), "expected '" + usage + "'");
    if (tokens.size() > n) fail(tokens[n], "unexpected '" + tokens[n].text + "' after '" + usage + "'");
  }

  long long parse_integer(const Token& t, long long lo, const std::string& what) const {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v < lo) fail(t, "invalid " + what + " '" + t.text + "'");
    return v;
  }
  int parse_int(const Token& t) const { return static_cast<int>(parse_integer(t, 0, "integer")); }

  std::uint64_t parse_seed(const Token& t) const {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "invalid seed '" + t.text + "'");
    return v;
  }

  Coordinates parse_array(const Token& t) const {
    if (t.text.front() != '[') fail(t, "expected a coordinate array '[x, ...]', found '" + t.text + "'");
    Coordinates out;
    std::size_t i = 1;
    const std::string& s = t.text;
    auto skip_space = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_space();
    if (s[i] == ']') return out;
    for (;;) {
      skip_space();
      double v = 0;
      const auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
      if (ec != std::errc()) fail(line_no(), t.column + static_cast<int>(i), "invalid number in coordinate array");
      out.push_back(v);
      i = static_cast<std::size_t>(ptr - s.data());
      skip_space();
      if (s[i] == ']') return out;
      if (s[i] != ',') fail(line_no(), t.column + static_cast<int>(i), "expected ',' or ']' in coordinate array");
      ++i;
    }
  }

  Expectation parse_expectation(const std::vector<Token>& tokens) const {
    expect_arity(tokens, 3, "expect <check> pass|fail");
    if (tokens[2].text != "pass" && tokens[2].text != "fail") fail(tokens[2], "expected 'pass' or 'fail'");
    return {tokens[1].text, tokens[2].text == "pass"};
  }

  // The rest of the line after the keyword, as written.
  std::string rest_of_line(const Token& first) const {
    std::string_view line = lines_[line_index_ - 1];
    line = line.substr(static_cast<std::size_t>(first.column - 1));
    line = line.substr(0, line.find('#'));
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    return std::string(line);
  }

  std::string parse_descriptor(const std::vector<Token>& tokens) const {
    if (tokens.size() < 2) fail(line_no(), tokens[0].column + 7, "expected 'algebra <descriptor>'");
    const std::string text = rest_of_line(tokens[1]);
    try {
      return parse_algebra(text).to_string();
    } catch (const std::invalid_argument& e) {
      // descriptor errors end in "at position <n>"
      const std::string what = e.what();
      int column = tokens[1].column;
      const auto at = what.rfind("at position ");
      if (at != std::string::npos) column += std::stoi(what.substr(at + 12));
      fail(line_no(), column, what);
    }
  }

  SystemSpec parse_system(const std::string& name) {
    SystemSpec spec;
    spec.name = name;
    bool have_algebra = false, have_tests = false;
    const int opened = line_no();
    for (;;) {
      auto tokens = next();
      if (!tokens) fail(opened, 1, "system '" + name + "' is missing 'end'");
      const Token& head = (*tokens)[0];
      if (head.text == "end") {
        expect_arity(*tokens, 1, "end");
        break;
      }
      if (head.text == "algebra") {
        if (have_algebra) fail(head, "duplicate 'algebra'");
        spec.algebra = parse_descriptor(*tokens);
        have_algebra = true;
      } else if (head.text == "tests") {
        if (have_tests) fail(head, "duplicate 'tests'");
        have_tests = true;
        if (tokens->size() < 2) fail(head, "expected 'tests sampled <count> [seed <n>]' or 'tests explicit'");
        const Token& mode = (*tokens)[1];
        if (mode.text == "explicit") {
          expect_arity(*tokens, 2, "tests explicit");
          spec.sampled = false;
          spec.count = 0;
        } else if (mode.text == "sampled") {
          if (tokens->size() != 3 && tokens->size() != 5) expect_arity(*tokens, 3, "tests sampled <count> [seed <n>]");
          spec.count = static_cast<int>(parse_integer((*tokens)[2], 1, "test count"));
          if (tokens->size() == 5) {
            if ((*tokens)[3].text != "seed") fail((*tokens)[3], "expected 'seed'");
            spec.seed = parse_seed((*tokens)[4]);
          }
        } else {
          fail(mode, "unknown test mode '" + mode.text + "', expected 'sampled' or 'explicit'");
        }
      } else if (head.text == "frame") {
        if (!have_tests || spec.sampled) fail(head, "'frame' requires 'tests explicit' first");
        if (tokens->size() < 2) fail(head, "expected 'frame [x, ...] ...'");
        std::vector<Coordinates> frame;
        for (std::size_t k = 1; k < tokens->size(); ++k) frame.push_back(parse_array((*tokens)[k]));
        spec.frames.push_back(std::move(frame));
        ++spec.count;
      } else if (head.text == "state") {
        expect_arity(*tokens, 2, "state [x, ...] | state uniform");
        if ((*tokens)[1].text == "uniform")
          spec.uniform_state = true;
        else
          spec.states.push_back(parse_array((*tokens)[1]));
      } else if (head.text == "expect") {
        spec.expectations.push_back(parse_expectation(*tokens));
      } else {
        fail(head, "unknown system directive '" + head.text + "'");
      }
    }
    if (!have_algebra) fail(opened, 1, "system '" + name + "' has no 'algebra'");
    if (!have_tests) fail(opened, 1, "system '" + name + "' has no 'tests'");
    if (!spec.sampled && spec.frames.empty()) fail(opened, 1, "system '" + name + "' declares explicit tests but no 'frame'");
    return spec;
  }

  CompositeSpec parse_composite(const std::string& name, const ModelFile& file) {
    CompositeSpec spec;
    spec.name = name;
    bool have_parts = false, have_carrier = false;
    const int opened = line_no();
    for (;;) {
      auto tokens = next();
      if (!tokens) fail(opened, 1, "composite '" + name + "' is missing 'end'");
      const Token& head = (*tokens)[0];
      if (head.text == "end") {
        expect_arity(*tokens, 1, "end");
        break;
      }
      if (head.text == "parts") {
        expect_arity(*tokens, 3, "parts <system> <system>");
        for (std::size_t k = 1; k < 3; ++k)
          if (!file.find_system((*tokens)[k].text)) fail((*tokens)[k], "unknown system '" + (*tokens)[k].text + "'");
        spec.part_a = (*tokens)[1].text;
        spec.part_b = (*tokens)[2].text;
        have_parts = true;
      } else if (head.text == "carrier") {
        expect_arity(*tokens, 2, "carrier candidate");
        if ((*tokens)[1].text != "candidate") fail((*tokens)[1], "unknown carrier '" + (*tokens)[1].text + "', expected 'candidate'");
        have_carrier = true;
      } else if (head.text == "state") {
        expect_arity(*tokens, 2, "state [x, ...] | state maximally-entangled");
        if ((*tokens)[1].text == "maximally-entangled")
          spec.maximally_entangled = true;
        else
          spec.states.push_back(parse_array((*tokens)[1]));
      } else if (head.text == "expect") {
        spec.expectations.push_back(parse_expectation(*tokens));
      } else {
        fail(head, "unknown composite directive '" + head.text + "'");
      }
    }
    if (!have_parts) fail(opened, 1, "composite '" + name + "' has no 'parts'");
    if (!have_carrier) fail(opened, 1, "composite '" + name + "' has no 'carrier'");
    return spec;
  }
};

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_array(const Coordinates& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_number(xs[i]);
  return out + "]";
}

void write_expectations(std::ostringstream& out, const std::vector<Expectation>& es) {
  for (const auto& e : es) out << "  expect " << e.check << (e.pass ? " pass" : " fail") << "\n";
}

}  // namespace

ModelFile parse_model_file(std::string_view text, const std::string& source) {
  return LineParser(text, source).parse();
}

ModelFile read_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_file(buf.str(), path.string());
}

std::string serialize(const ModelFile& file) {
  std::ostringstream out;
  out << "hsdcert-model " << file.version << "\n";
  for (const auto& s : file.systems) {
    out << "\nsystem " << s.name << "\n  algebra " << s.algebra << "\n";
    if (s.sampled) {
      out << "  tests sampled " << s.count;
      if (s.seed) out << " seed " << *s.seed;
      out << "\n";
    } else {
      out << "  tests explicit\n";
      for (const auto& frame : s.frames) {
        out << "  frame";
        for (const auto& x : frame) out << " " << format_array(x);
        out << "\n";
      }
    }
    if (s.uniform_state) out << "  state uniform\n";
    for (const auto& w : s.states) out << "  state " << format_array(w) << "\n";
    write_expectations(out, s.expectations);
    out << "end\n";
  }
  for (const auto& c : file.composites) {
    out << "\ncomposite " << c.name << "\n  parts " << c.part_a << " " << c.part_b << "\n  carrier candidate\n";
    if (c.maximally_entangled) out << "  state maximally-entangled\n";
    for (const auto& w : c.states) out << "  state " << format_array(w) << "\n";
    write_expectations(out, c.expectations);
    out << "end\n";
  }
  return out.str();
}

}  // namespace hsd
