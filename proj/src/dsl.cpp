#include "fisheco/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fisheco {

namespace detail {
struct FixtureData {
  const char* name;
  const char* text;
};
// Generated from scenarios/*.fis at build time.
extern const FixtureData kFixtures[];
extern const std::size_t kFixtureCount;
}  // namespace detail

namespace {

struct Token {
  enum class Kind { word, string, lbrace, rbrace, comma, equals };
  Kind kind;
  std::string text;  // unescaped content for strings
  int column;        // 1-based start column
};

struct Line {
  int number = 0;
  std::string text;  // without the trailing newline
  std::vector<Token> tokens;
};

[[noreturn]] void fail(const Line& line, int column, const std::string& message) {
  throw ParseError(line.number, column, message, line.text);
}

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.';
}

std::vector<Token> lex_line(const Line& line) {
  std::vector<Token> tokens;
  const std::string& s = line.text;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const int column = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      for (;; ++j) {
        if (j >= s.size()) fail(line, column, "unterminated string literal");
        if (s[j] == '"') break;
        if (s[j] == '\\') {
          ++j;
          if (j >= s.size() || (s[j] != '"' && s[j] != '\\')) {
            fail(line, static_cast<int>(j), "unknown escape, only \\\" and \\\\ are recognised");
          }
          value.push_back(s[j]);
        } else {
          value.push_back(s[j]);
        }
      }
      tokens.push_back({Token::Kind::string, std::move(value), column});
      i = j + 1;
      continue;
    }
    if (c == '{' || c == '}' || c == ',' || c == '=') {
      Token::Kind kind = c == '{'   ? Token::Kind::lbrace
                         : c == '}' ? Token::Kind::rbrace
                         : c == ',' ? Token::Kind::comma
                                    : Token::Kind::equals;
      tokens.push_back({kind, std::string(1, c), column});
      ++i;
      continue;
    }
    if (word_char(c)) {
      std::size_t j = i;
      while (j < s.size() && word_char(s[j])) ++j;
      tokens.push_back({Token::Kind::word, s.substr(i, j - i), column});
      i = j;
      continue;
    }
    fail(line, column, std::string("unexpected character '") + c + "'");
  }
  return tokens;
}

// Cursor over one statement's tokens.
class Stmt {
 public:
  Stmt(const Line& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tokens.size(); }

  const Token& peek() const {
    if (done()) {
      fail(line_, line_.text.empty() ? 1 : static_cast<int>(line_.text.size()),
           "unexpected end of statement");
    }
    return line_.tokens[pos_];
  }

  const Token& next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  std::string expect_string(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::string) {
      fail(line_, t.column, "expected " + what + " as a quoted string");
    }
    ++pos_;
    return t.text;
  }

  const Token& expect(Token::Kind kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) fail(line_, t.column, "expected " + what);
    ++pos_;
    return t;
  }

  void expect_end() {
    if (!done()) fail(line_, peek().column, "unexpected trailing tokens");
  }

  const Line& line() const { return line_; }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

AttrValue parse_attr_value(Stmt& stmt) {
  const Token& t = stmt.next();
  if (t.kind == Token::Kind::string) return AttrValue{t.text};
  if (t.kind == Token::Kind::word) {
    if (t.text == "true") return AttrValue{true};
    if (t.text == "false") return AttrValue{false};
  }
  fail(stmt.line(), t.column, "attribute value must be true, false or a quoted string");
}

std::map<std::string, AttrValue> parse_attr_block(Stmt& stmt) {
  std::map<std::string, AttrValue> attrs;
  stmt.expect(Token::Kind::lbrace, "'{'");
  for (;;) {
    const Token& name = stmt.expect(Token::Kind::word, "an attribute name");
    if (!is_identifier(name.text)) {
      fail(stmt.line(), name.column,
           "attribute name '" + name.text + "' must match [a-z][a-z_]*");
    }
    stmt.expect(Token::Kind::equals, "'='");
    AttrValue value = parse_attr_value(stmt);
    if (!attrs.emplace(name.text, std::move(value)).second) {
      fail(stmt.line(), name.column, "attribute '" + name.text + "' set twice");
    }
    const Token& sep = stmt.next();
    if (sep.kind == Token::Kind::rbrace) break;
    if (sep.kind != Token::Kind::comma) {
      fail(stmt.line(), sep.column, "expected ',' or '}'");
    }
  }
  return attrs;
}

// Runs a mutation and converts library errors into a ParseError anchored at
// the statement.
template <typename F>
void replay(const Line& line, int column, F&& mutation) {
  try {
    mutation();
  } catch (const Error& e) {
    throw ParseError(line.number, column,
                     std::string(errc_name(e.code())) + ": " + e.what(),
                     line.text);
  }
}

void parse_entity_stmt(Stmt& stmt, ScenarioGraph& graph) {
  const Token& type = stmt.expect(Token::Kind::word, "an entity type code");
  if (!is_type_code(type.text)) {
    fail(stmt.line(), type.column,
         "entity type code '" + type.text + "' must match [A-Z][A-Z_]*");
  }
  std::string id = stmt.expect_string("an entity id");
  std::map<std::string, AttrValue> attrs;
  if (!stmt.done()) attrs = parse_attr_block(stmt);
  stmt.expect_end();
  replay(stmt.line(), 1,
         [&] { graph.add_entity(type.text, id, std::move(attrs)); });
}

void parse_rel_stmt(Stmt& stmt, ScenarioGraph& graph) {
  std::string source = stmt.expect_string("a source entity id");
  const Token& verb = stmt.expect(Token::Kind::word, "a relation verb");
  if (!is_identifier(verb.text)) {
    fail(stmt.line(), verb.column,
         "verb '" + verb.text + "' must match [a-z][a-z_]*");
  }
  std::string target = stmt.expect_string("a target entity id");
  std::optional<Tense> tense;
  std::optional<Date> date;
  while (!stmt.done()) {
    const Token& kw = stmt.expect(Token::Kind::word, "'tense' or 'at'");
    if (kw.text == "tense" && !tense) {
      const Token& value = stmt.expect(Token::Kind::word, "'past' or 'ongoing'");
      tense = tense_from_string(value.text);
      if (!tense) fail(stmt.line(), value.column, "tense must be past or ongoing");
    } else if (kw.text == "at" && !date) {
      const Token& value = stmt.expect(Token::Kind::word, "a YYYY-MM-DD date");
      date = Date::parse(value.text);
      if (!date) {
        fail(stmt.line(), value.column,
             "'" + value.text + "' is not a valid YYYY-MM-DD date");
      }
    } else {
      fail(stmt.line(), kw.column, "expected 'tense' or 'at'");
    }
  }
  replay(stmt.line(), 1,
         [&] { graph.add_relation(source, verb.text, target, tense, date); });
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw = end == std::string_view::npos
                               ? text.substr(start)
                               : text.substr(start, end - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    lines.push_back(Line{number, std::string(raw), {}});
    if (end == std::string_view::npos) break;
    start = end + 1;
    ++number;
  }
  return lines;
}

std::string escape_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

ParseError::ParseError(int line, int column, std::string message,
                       std::string snippet)
    : Error(Errc::malformed_document,
            "line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      snippet_(std::move(snippet)),
      detail_(std::move(message)) {}

ScenarioGraph parse(std::string_view text) {
  std::vector<Line> lines = split_lines(text);
  std::vector<Line*> stmts;
  for (Line& line : lines) {
    line.tokens = lex_line(line);
    if (!line.tokens.empty()) stmts.push_back(&line);
  }

  std::size_t next = 0;
  auto take = [&]() -> Line* {
    return next < stmts.size() ? stmts[next++] : nullptr;
  };

  Line* header = take();
  if (!header) throw ParseError(1, 1, "missing 'scenario' header", "");
  Stmt scenario_stmt(*header);
  const Token& kw = scenario_stmt.expect(Token::Kind::word, "'scenario'");
  if (kw.text != "scenario") fail(*header, kw.column, "expected 'scenario'");
  std::string name = scenario_stmt.expect_string("a scenario name");
  scenario_stmt.expect_end();

  Line* model_line = take();
  if (!model_line) {
    fail(*header, 1, "missing 'model' line after the scenario header");
  }
  Stmt model_stmt(*model_line);
  const Token& model_kw = model_stmt.expect(Token::Kind::word, "'model'");
  if (model_kw.text != "model") fail(*model_line, model_kw.column, "expected 'model'");
  const Token& model_id = model_stmt.expect(Token::Kind::word, "a model id");
  const Schema* schema = find_builtin(model_id.text);
  if (!schema) {
    fail(*model_line, model_id.column,
         "model must be A, B or merged, got '" + model_id.text + "'");
  }
  model_stmt.expect_end();

  ScenarioGraph graph(std::move(name), *schema);
  while (Line* line = take()) {
    Stmt stmt(*line);
    const Token& head = stmt.next();
    if (head.kind == Token::Kind::word && head.text == "entity") {
      parse_entity_stmt(stmt, graph);
    } else if (head.kind == Token::Kind::word && head.text == "rel") {
      parse_rel_stmt(stmt, graph);
    } else {
      fail(*line, head.column, "expected 'entity' or 'rel'");
    }
  }
  return graph;
}

std::string serialize(const ScenarioGraph& g) {
  if (!find_builtin(g.schema().id())) {
    throw Error(Errc::usage,
                "only graphs over the builtin models (A, B, merged) have a "
                "textual form; this graph uses schema " + g.schema().id());
  }
  std::ostringstream out;
  out << "scenario " << escape_string(g.name()) << "\n";
  out << "model " << g.schema().id() << "\n";

  std::vector<const Entity*> entities;
  entities.reserve(g.entities().size());
  for (const auto& [id, e] : g.entities()) entities.push_back(&e);
  std::sort(entities.begin(), entities.end(), [](const Entity* a, const Entity* b) {
    return std::tie(a->type_code, a->id) < std::tie(b->type_code, b->id);
  });

  if (!entities.empty()) out << "\n";
  for (const Entity* e : entities) {
    out << "entity " << e->type_code << " " << escape_string(e->id);
    if (!e->attrs.empty()) {
      out << " { ";
      bool first = true;
      for (const auto& [attr_name, value] : e->attrs) {
        if (!first) out << ", ";
        first = false;
        out << attr_name << " = ";
        if (const bool* b = std::get_if<bool>(&value)) {
          out << (*b ? "true" : "false");
        } else {
          out << escape_string(std::get<std::string>(value));
        }
      }
      out << " }";
    }
    out << "\n";
  }

  if (!g.relations().empty()) out << "\n";
  for (const Relation& r : g.relations()) {
    out << "rel " << escape_string(r.source_id) << " " << r.verb << " "
        << escape_string(r.target_id);
    if (r.date) {
      out << " at " << r.date->to_string();
    } else if (r.tense == Tense::past) {
      out << " tense past";
    }
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  names.reserve(detail::kFixtureCount);
  for (std::size_t i = 0; i < detail::kFixtureCount; ++i) {
    names.emplace_back(detail::kFixtures[i].name);
  }
  return names;
}

const std::string& fixture_text(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> texts = [] {
    std::map<std::string, std::string, std::less<>> m;
    for (std::size_t i = 0; i < detail::kFixtureCount; ++i) {
      m.emplace(detail::kFixtures[i].name, detail::kFixtures[i].text);
    }
    return m;
  }();
  auto it = texts.find(name);
  if (it == texts.end()) {
    throw Error(Errc::unknown_fixture,
                "unknown fixture '" + std::string(name) +
                    "'; run 'fixtures list' for the available names");
  }
  return it->second;
}

ScenarioGraph load_fixture(std::string_view name) {
  return parse(fixture_text(name));
}

}  // namespace fisheco
