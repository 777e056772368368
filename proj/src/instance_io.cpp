#include "ilcount/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace ilc {

namespace {

bool is_integer_literal(const std::string& tok) {
  std::size_t i = (!tok.empty() && tok[0] == '-') ? 1 : 0;
  if (i >= tok.size()) return false;
  for (; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  }
  return true;
}

BigInt parse_int(const std::string& tok, int line, const char* what) {
  if (!is_integer_literal(tok)) {
    throw ParseError(line, std::string("expected integer ") + what +
                               ", got '" + tok + "'");
  }
  return BigInt(tok);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

// "<int>*x<int>", e.g. -2*x13
void parse_term(const std::string& tok, int line, BigInt& coeff, VarId& var) {
  const std::size_t star = tok.find('*');
  if (star == std::string::npos || star + 1 >= tok.size() ||
      tok[star + 1] != 'x') {
    throw ParseError(line, "malformed term '" + tok + "' (want <int>*x<id>)");
  }
  coeff = parse_int(tok.substr(0, star), line, "coefficient");
  const std::string id_part = tok.substr(star + 2);
  if (!is_integer_literal(id_part) || id_part[0] == '-') {
    throw ParseError(line, "malformed variable id in term '" + tok + "'");
  }
  BigInt id(id_part);
  if (id < 1 || id > 1000000000) {
    throw ParseError(line, "variable id out of range in term '" + tok + "'");
  }
  var = static_cast<VarId>(id.get_si());
}

struct Line {
  int number;
  std::vector<std::string> tokens;
};

}  // namespace

System parse_instance(const std::string& text) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      const std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      auto toks = tokenize(raw);
      if (!toks.empty()) lines.push_back(Line{number, std::move(toks)});
    }
  }
  if (lines.empty()) throw ParseError(1, "missing header 'p ilc <n> <m>'");

  std::size_t pos = 0;
  const Line& header = lines[pos++];
  if (header.tokens.size() != 4 || header.tokens[0] != "p" ||
      header.tokens[1] != "ilc") {
    throw ParseError(header.number, "expected header 'p ilc <n> <m>'");
  }
  const BigInt n_big = parse_int(header.tokens[2], header.number, "n");
  const BigInt m_big = parse_int(header.tokens[3], header.number, "m");
  if (n_big < 0 || n_big > 1000000 || m_big < 0 || m_big > 1000000) {
    throw ParseError(header.number, "variable or row count out of range");
  }
  const long n = n_big.get_si();
  const long m = m_big.get_si();

  System s;
  VarId last_var = 0;
  for (long i = 0; i < n; ++i) {
    if (pos >= lines.size()) {
      throw ParseError(lines.back().number,
                       "expected " + std::to_string(n) + " 'd' lines");
    }
    const Line& line = lines[pos++];
    if (line.tokens.size() != 4 || line.tokens[0] != "d") {
      throw ParseError(line.number, "expected 'd <j> <l> <u>'");
    }
    const BigInt id_big = parse_int(line.tokens[1], line.number, "variable id");
    if (id_big < 1 || id_big > 1000000000) {
      throw ParseError(line.number, "variable id out of range");
    }
    const VarId var = static_cast<VarId>(id_big.get_si());
    if (var == last_var) {
      throw ParseError(line.number, "duplicate variable declaration");
    }
    if (var < last_var) {
      throw ParseError(line.number,
                       "variable declarations must be ascending by id");
    }
    last_var = var;
    BigInt lower = parse_int(line.tokens[2], line.number, "lower bound");
    BigInt upper = parse_int(line.tokens[3], line.number, "upper bound");
    s.add_variable(var, std::move(lower), std::move(upper));
  }

  for (long i = 0; i < m; ++i) {
    if (pos >= lines.size()) {
      throw ParseError(lines.back().number,
                       "expected " + std::to_string(m) + " 'r' lines");
    }
    const Line& line = lines[pos++];
    const auto& toks = line.tokens;
    if (toks.size() < 3 || toks[0] != "r") {
      throw ParseError(line.number, "expected 'r <terms> <op> <rhs>'");
    }
    const std::string& op = toks[toks.size() - 2];
    if (op != "<=" && op != ">=" && op != "=") {
      throw ParseError(line.number, "expected operator <=, >= or =, got '" +
                                        op + "'");
    }
    BigInt rhs = parse_int(toks.back(), line.number, "right-hand side");
    std::vector<Term> terms;
    for (std::size_t t = 1; t + 2 < toks.size(); ++t) {
      BigInt coeff;
      VarId var;
      parse_term(toks[t], line.number, coeff, var);
      if (s.find_var(var) == nullptr) {
        throw ParseError(line.number, "undeclared variable x" +
                                          std::to_string(var));
      }
      for (const Term& existing : terms) {
        if (existing.var == var) {
          throw ParseError(line.number, "duplicate variable x" +
                                            std::to_string(var) + " in row");
        }
      }
      if (coeff != 0) terms.push_back(Term{var, std::move(coeff)});
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    if (op == "<=") {
      s.add_row(Row{std::move(terms), std::move(rhs)});
    } else if (op == ">=") {
      for (Term& t : terms) t.coeff = -t.coeff;
      s.add_row(Row{std::move(terms), -rhs});
    } else {
      std::vector<Term> negated = terms;
      for (Term& t : negated) t.coeff = -t.coeff;
      s.add_row(Row{std::move(terms), rhs});
      s.add_row(Row{std::move(negated), -rhs});
    }
  }

  if (pos < lines.size()) {
    throw ParseError(lines[pos].number, "unexpected trailing line");
  }
  return s;
}

System load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string render_instance(const System& s) {
  if (s.inconsistent()) {
    throw std::invalid_argument("cannot render an inconsistent system");
  }
  std::ostringstream out;
  out << "p ilc " << s.num_vars() << ' ' << s.num_rows() << '\n';
  for (const VarBounds& vb : s.bounds()) {
    out << "d " << vb.var << ' ' << vb.lower << ' ' << vb.upper << '\n';
  }
  for (const auto& entry : s.rows()) {
    out << 'r';
    for (const Term& t : entry.row.terms) {
      out << ' ' << t.coeff << "*x" << t.var;
    }
    out << " <= " << entry.row.rhs << '\n';
  }
  return out.str();
}

void save_instance(const System& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << render_instance(s);
}

}  // namespace ilc
