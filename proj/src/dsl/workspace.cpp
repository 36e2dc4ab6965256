#include "symred/workspace.hpp"

#include <set>
#include <sstream>

#include "expr/lexer.hpp"
#include "expr/parser.hpp"

namespace symred {

std::vector<Expr> SystemDecl::residuals() const {
  std::vector<Expr> out;
  for (const auto& e : equations) out.push_back(e.lhs);
  return out;
}

const SystemDecl& Workspace::system(const std::string& name) const {
  if (const auto* s = systems.find(name)) return *s;
  throw AnalysisError("unknown system '" + name + "'");
}
const AlgebraDecl& Workspace::algebra(const std::string& name) const {
  if (const auto* a = algebras.find(name)) return *a;
  throw AnalysisError("unknown algebra '" + name + "'");
}
const CandidateDecl& Workspace::candidate(const std::string& name) const {
  if (const auto* c = candidates.find(name)) return *c;
  throw AnalysisError("unknown candidate '" + name + "'");
}
const SystemDecl& Workspace::default_system() const {
  if (systems.empty()) throw AnalysisError("workspace declares no system");
  return systems.begin()->second;
}

ParseContext Workspace::context() const {
  ParseContext ctx = space.parse_context();
  ctx.functions.insert(ctx.functions.end(), functions.begin(), functions.end());
  for (const auto& [name, p] : params) ctx.constants[name] = Expr(p.value);
  return ctx;
}

namespace {

class WorkspaceParser {
 public:
  WorkspaceParser(const std::string& text, const std::map<std::string, Rational>& overrides)
      : ts_(tokenize(text)), overrides_(overrides) {
    ws_.source = text;
    ws_.overrides = overrides;
  }

  Workspace run() {
    while (!ts_.at_end()) statement();
    if (!have_space_) throw ParseError("workspace declares no space", 1, 1);
    for (const auto& [name, _] : overrides_) {
      if (!ws_.params.find(name)) throw AnalysisError("override for undeclared parameter '" + name + "'");
    }
    return std::move(ws_);
  }

 private:
  void statement() {
    Token kw = ts_.peek();
    std::string word = ts_.expect_ident("a declaration keyword");
    if (word == "space") return space(kw);
    if (!have_space_) throw ParseError("the space block must come first", kw.line, kw.column);
    if (word == "func") return func();
    if (word == "param") return param();
    if (word == "let") return let();
    if (word == "system") return system();
    if (word == "field") return field();
    if (word == "algebra") return algebra();
    if (word == "candidate") return candidate();
    if (word == "plan") return plan();
    throw ParseError("unknown declaration '" + word + "'", kw.line, kw.column);
  }

  std::string new_name(const char* what) {
    Token t = ts_.peek();
    std::string n = ts_.expect_ident(what);
    if (is_reserved_name(n)) throw ParseError("'" + n + "' is reserved", t.line, t.column);
    if (!names_.insert(n).second) throw ParseError("name '" + n + "' is already declared", t.line, t.column);
    return n;
  }

  void space(const Token& kw) {
    if (have_space_) throw ParseError("only one space per workspace file", kw.line, kw.column);
    std::vector<std::string> indep, dep;
    int order = 1;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      Token t = ts_.peek();
      std::string key = ts_.expect_ident("space entry");
      if (key == "independent" || key == "dependent") {
        auto& list = key == "independent" ? indep : dep;
        while (!ts_.is_punct(";")) list.push_back(new_name("variable name"));
      } else if (key == "order") {
        Token n = ts_.next();
        if (n.kind != Token::Kind::Number) throw ParseError("expected an integer order", n.line, n.column);
        order = std::stoi(n.text);
      } else {
        throw ParseError("unknown space entry '" + key + "'", t.line, t.column);
      }
      ts_.expect(";");
    }
    try {
      ws_.space = make_space(indep, dep, order);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), kw.line, kw.column);
    }
    ctx_ = ws_.space.parse_context();
    have_space_ = true;
  }

  void func() {
    std::string name = new_name("function name");
    std::vector<std::string> params;
    ts_.expect("(");
    params.push_back(ts_.expect_ident("parameter name"));
    while (ts_.accept(",")) params.push_back(ts_.expect_ident("parameter name"));
    ts_.expect(")");
    ts_.expect(";");
    auto sym = make_symbol(name, params);
    ws_.functions.push_back(sym);
    ctx_.functions.push_back(sym);
  }

  Rational constant_expr(const char* what) {
    Token at = ts_.peek();
    Expr e = parse_expr(ts_, ctx_);
    if (e.kind() != NodeKind::Constant) throw ParseError(std::string(what) + " must evaluate to a rational constant", at.line, at.column);
    return e.value();
  }

  void param() {
    std::string name = new_name("parameter name");
    ts_.expect("=");
    Parameter p;
    p.value = constant_expr("parameter value");
    if (ts_.is_ident("range")) {
      ts_.next();
      ts_.expect("[");
      Rational lo = constant_expr("range bound");
      ts_.expect(",");
      Rational hi = constant_expr("range bound");
      ts_.expect("]");
      p.range = std::make_pair(lo, hi);
    }
    ts_.expect(";");
    if (auto it = overrides_.find(name); it != overrides_.end()) p.value = it->second;
    ctx_.constants[name] = Expr(p.value);
    ws_.params.add(name, p);
  }

  void let() {
    std::string name = new_name("let name");
    ts_.expect("=");
    Expr e = parse_expr(ts_, ctx_);
    ts_.expect(";");
    ctx_.constants[name] = e;
  }

  void system() {
    std::string name = new_name("system name");
    SystemDecl sys;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      Token t = ts_.peek();
      if (ts_.expect_ident("'eq'") != "eq") throw ParseError("expected 'eq'", t.line, t.column);
      Equation eq;
      if (ts_.peek().kind == Token::Kind::Ident && ts_.peek(1).kind == Token::Kind::Punct && ts_.peek(1).text == ":") {
        eq.label = ts_.next().text;
        ts_.next();
      } else {
        eq.label = "eq" + std::to_string(sys.equations.size() + 1);
      }
      Expr lhs = parse_expr(ts_, ctx_);
      if (ts_.accept("=")) lhs = lhs - parse_expr(ts_, ctx_);
      ts_.expect(";");
      eq.lhs = lhs;
      sys.equations.push_back(eq);
    }
    ws_.systems.add(name, std::move(sys));
  }

  std::vector<Expr> expr_list() {
    std::vector<Expr> out;
    ts_.expect("[");
    if (!ts_.is_punct("]")) {
      out.push_back(parse_expr(ts_, ctx_));
      while (ts_.accept(",")) out.push_back(parse_expr(ts_, ctx_));
    }
    ts_.expect("]");
    return out;
  }

  void field() {
    Token at = ts_.peek();
    std::string name = new_name("field name");
    VectorField f;
    f.name = name;
    f.xi.assign(ws_.space.p(), Expr(0));
    f.phi.assign(ws_.space.q(), Expr(0));
    ts_.expect("{");
    while (!ts_.accept("}")) {
      Token t = ts_.peek();
      std::string key = ts_.expect_ident("'xi' or 'phi'");
      ts_.expect("=");
      auto list = expr_list();
      ts_.expect(";");
      std::size_t want = key == "xi" ? ws_.space.p() : ws_.space.q();
      if (key != "xi" && key != "phi") throw ParseError("unknown field entry '" + key + "'", t.line, t.column);
      if (list.size() != want) {
        throw ParseError("'" + key + "' needs " + std::to_string(want) + " entries", t.line, t.column);
      }
      (key == "xi" ? f.xi : f.phi) = list;
    }
    try {
      f.validate(ws_.space);
    } catch (const AnalysisError& e) {
      throw ParseError(e.what(), at.line, at.column);
    }
    ws_.fields.add(name, std::move(f));
  }

  void algebra() {
    Token at = ts_.peek();
    std::string name = new_name("algebra name");
    AlgebraDecl decl;
    decl.algebra.name = name;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      Token t = ts_.peek();
      std::string key = ts_.expect_ident("'fields' or 'combination'");
      if (key == "fields") {
        while (!ts_.is_punct(";")) {
          Token ft = ts_.peek();
          std::string fname = ts_.expect_ident("field name");
          const VectorField* f = ws_.fields.find(fname);
          if (!f) throw ParseError("unknown field '" + fname + "'", ft.line, ft.column);
          decl.algebra.fields.push_back(*f);
        }
        ts_.expect(";");
      } else if (key == "combination") {
        std::string cname = ts_.expect_ident("combination name");
        ts_.expect("=");
        Token et = ts_.peek();
        Expr e = parse_expr(ts_, ctx_);
        ts_.expect(";");
        std::vector<Rational> coeffs;
        std::vector<std::pair<std::string, Expr>> zero;
        for (const auto& f : decl.algebra.fields) {
          Expr c = differentiate(e, f.name);
          if (c.kind() != NodeKind::Constant) throw ParseError("combination coefficients must be constants", et.line, et.column);
          coeffs.push_back(c.value());
          zero.emplace_back(f.name, Expr(0));
        }
        if (!substitute(e, zero).is_zero()) throw ParseError("combination must be linear in the generators", et.line, et.column);
        decl.combinations[cname] = coeffs;
      } else {
        throw ParseError("unknown algebra entry '" + key + "'", t.line, t.column);
      }
    }
    if (decl.algebra.fields.empty()) throw ParseError("algebra '" + name + "' has no fields", at.line, at.column);
    ws_.algebras.add(name, std::move(decl));
  }

  Box box() {
    Box b;
    do {
      ts_.expect("[");
      Rational lo = constant_expr("interval bound");
      ts_.expect(",");
      Rational hi = constant_expr("interval bound");
      ts_.expect("]");
      b.pieces.push_back({lo.to_double(), hi.to_double()});
    } while (ts_.accept("|"));
    return b;
  }

  void candidate() {
    std::string name = new_name("candidate name");
    CandidateDecl decl;
    decl.candidate.name = name;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      Token t = ts_.peek();
      std::string key = ts_.expect_ident("candidate entry");
      if (key == "exclude") {
        decl.candidate.excluded.push_back(parse_expr(ts_, ctx_));
      } else if (key == "box") {
        std::string v = ts_.expect_ident("variable");
        if (!ws_.space.independent_index(v)) throw ParseError("box for unknown independent '" + v + "'", t.line, t.column);
        ts_.expect("=");
        decl.candidate.boxes[v] = box();
      } else if (key == "solution") {
        decl.solution = true;
      } else if (key == "requires") {
        std::string p = ts_.expect_ident("parameter");
        if (!ws_.params.find(p)) throw ParseError("unknown parameter '" + p + "'", t.line, t.column);
        ts_.expect("=");
        decl.requires_[p] = constant_expr("required value");
      } else if (ws_.space.dependent_index(key)) {
        ts_.expect("=");
        Token et = ts_.peek();
        Expr e = parse_expr(ts_, ctx_);
        if (contains_jets(e)) throw ParseError("candidate values may not refer to dependent variables", et.line, et.column);
        if (decl.candidate.values.count(key)) throw ParseError("'" + key + "' assigned twice", t.line, t.column);
        decl.candidate.values[key] = e;
      } else {
        throw ParseError("unknown candidate entry '" + key + "'", t.line, t.column);
      }
      ts_.expect(";");
    }
    ws_.candidates.add(name, std::move(decl));
  }

  void plan() {
    std::string name = new_name("plan name");
    SamplePlan p;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      Token t = ts_.peek();
      std::string key = ts_.expect_ident("plan entry");
      if (key == "count" || key == "min") {
        int v = static_cast<int>(*constant_expr("count").to_int());
        (key == "count" ? p.count : p.min_accepted) = v;
      } else if (key == "seeds") {
        p.seeds.clear();
        while (!ts_.is_punct(";")) p.seeds.push_back(static_cast<std::uint64_t>(*constant_expr("seed").to_int()));
      } else if (key == "eps") {
        p.eps_sing = constant_expr("eps").to_double();
      } else if (key == "box") {
        std::string v = ts_.expect_ident("variable");
        ts_.expect("=");
        p.boxes[v] = box();
      } else if (key == "branch") {
        std::string b = ts_.expect_ident("'real' or 'complex'");
        p.branch = b == "complex" ? Branch::Principal : Branch::RealDomain;
      } else {
        throw ParseError("unknown plan entry '" + key + "'", t.line, t.column);
      }
      ts_.expect(";");
    }
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), ts_.peek().line, ts_.peek().column);
    }
    ws_.plans.add(name, p);
  }

  TokenStream ts_;
  std::map<std::string, Rational> overrides_;
  Workspace ws_;
  ParseContext ctx_;
  std::set<std::string> names_;
  bool have_space_ = false;
};

std::string join(const std::vector<Expr>& es) {
  std::string out;
  for (std::size_t i = 0; i < es.size(); ++i) out += (i ? ", " : "") + to_string(es[i]);
  return out;
}

std::string box_text(const Box& b) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < b.pieces.size(); ++i) {
    os << (i ? " | " : "") << "[" << Rational::from_double(b.pieces[i].lo).str() << ", "
       << Rational::from_double(b.pieces[i].hi).str() << "]";
  }
  return os.str();
}

}  // namespace

Workspace parse_workspace(const std::string& text, const std::map<std::string, Rational>& overrides) {
  return WorkspaceParser(text, overrides).run();
}

Workspace workspace_for_candidate(const Workspace& ws, const std::string& candidate) {
  const auto& c = ws.candidate(candidate);
  if (c.requires_.empty()) return ws;
  bool same = true;
  for (const auto& [k, v] : c.requires_) {
    if (!(ws.params.at(k).value == v)) same = false;
  }
  if (same) return ws;
  auto overrides = ws.overrides;
  for (const auto& [k, v] : c.requires_) overrides[k] = v;
  return parse_workspace(ws.source, overrides);
}

std::string export_workspace(const Workspace& ws) {
  std::ostringstream os;
  const auto& sp = ws.space;
  os << "space {\n  independent";
  for (const auto& v : sp.independents()) os << " " << v;
  os << ";\n  dependent";
  for (const auto& v : sp.dependents()) os << " " << v;
  os << ";\n  order " << sp.max_order() << ";\n}\n";
  for (const auto& f : ws.functions) {
    os << "func " << f->name << "(";
    for (std::size_t i = 0; i < f->params.size(); ++i) os << (i ? ", " : "") << f->params[i];
    os << ");\n";
  }
  for (const auto& [name, p] : ws.params) {
    os << "param " << name << " = " << p.value.str();
    if (p.range) os << " range [" << p.range->first.str() << ", " << p.range->second.str() << "]";
    os << ";\n";
  }
  for (const auto& [name, s] : ws.systems) {
    os << "system " << name << " {\n";
    for (const auto& e : s.equations) os << "  eq " << e.label << ": " << to_string(e.lhs) << ";\n";
    os << "}\n";
  }
  for (const auto& [name, f] : ws.fields) {
    os << "field " << name << " {\n  xi = [" << join(f.xi) << "];\n  phi = [" << join(f.phi) << "];\n}\n";
  }
  for (const auto& [name, a] : ws.algebras) {
    os << "algebra " << name << " {\n  fields";
    for (const auto& f : a.algebra.fields) os << " " << f.name;
    os << ";\n";
    for (const auto& [cname, coeffs] : a.combinations) {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_zero()) terms.push_back(Expr(coeffs[i]) * Expr::variable(a.algebra.fields[i].name));
      }
      os << "  combination " << cname << " = " << to_string(Expr::sum(terms)) << ";\n";
    }
    os << "}\n";
  }
  for (const auto& [name, c] : ws.candidates) {
    os << "candidate " << name << " {\n";
    for (const auto& dep : sp.dependents()) {
      auto it = c.candidate.values.find(dep);
      if (it != c.candidate.values.end()) os << "  " << dep << " = " << to_string(it->second) << ";\n";
    }
    for (const auto& l : c.candidate.excluded) os << "  exclude " << to_string(l) << ";\n";
    for (const auto& [v, b] : c.candidate.boxes) os << "  box " << v << " = " << box_text(b) << ";\n";
    for (const auto& [k, v] : c.requires_) os << "  requires " << k << " = " << v.str() << ";\n";
    if (c.solution) os << "  solution;\n";
    os << "}\n";
  }
  for (const auto& [name, p] : ws.plans) {
    os << "plan " << name << " {\n  count " << p.count << ";\n  min " << p.min_accepted << ";\n  seeds";
    for (auto s : p.seeds) os << " " << s;
    os << ";\n  eps " << Rational::from_double(p.eps_sing).str() << ";\n";
    for (const auto& [v, b] : p.boxes) os << "  box " << v << " = " << box_text(b) << ";\n";
    os << "  branch " << (p.branch == Branch::Principal ? "complex" : "real") << ";\n}\n";
  }
  return os.str();
}

}  // namespace symred
