// Copyright 2026 The pdflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracle/program.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace oracle {

namespace {

// ---- Generation ----

class Generator {
 public:
  Generator(std::mt19937_64& rng, const Limits& limits) : rng_(rng), limits_(limits) {}

  bool Chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  int Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  template <typename T>
  const T& Pick(const std::vector<T>& xs) { return xs[Int(0, static_cast<int>(xs.size()) - 1)]; }

  Program Make() {
    Program p;
    p.file_count = Int(1, limits_.max_files);
    Class list;
    list.name = "List";
    list.type_params = {"T"};
    list.fields.push_back({"head", {"T", {}, 0}, {}});
    Method get;
    get.name = "get";
    get.params.push_back({"index", {"int", {}, 0}, {}});
    get.ret = Type{"T", {}, 0};
    get.abstract = true;
    Method put;
    put.name = "put";
    put.params.push_back({"item", {"T", {}, 0}, {}});
    put.abstract = true;
    list.methods = {get, put};
    list.file = Int(0, p.file_count - 1);
    p.classes.push_back(list);

    const int n = Int(1, limits_.max_classes - 1);
    for (int i = 0; i < n; ++i) class_names_.push_back("C" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
      Class c;
      c.name = class_names_[i];
      c.marks = Marks(0.3, 0.3, 0.2);
      c.file = Int(0, p.file_count - 1);
      c.super = Super(i);
      const int fields = Int(0, 2);
      for (int f = 0; f < fields; ++f) c.fields.push_back({Fresh("f"), RandomType(), {}});
      const int methods = Int(1, limits_.max_methods);
      for (int m = 0; m < methods; ++m) c.methods.push_back(Signature());
      p.classes.push_back(std::move(c));
    }
    CollectPools(p);
    for (std::size_t i = 1; i < p.classes.size(); ++i) {
      for (Method& m : p.classes[i].methods) {
        if (!m.abstract) FillBody(m);
      }
    }
    return p;
  }

  int Mutate(Program& p) {
    for (const Class& c : p.classes) {
      if (c.name != "List") class_names_.push_back(c.name);
    }
    ReserveCounters(p);
    CollectPools(p);
    const std::size_t index = static_cast<std::size_t>(Int(1, static_cast<int>(p.classes.size()) - 1));
    Class& c = p.classes[index];
    switch (Int(0, 8)) {
      case 0:
        c.marks ^= 1u << Int(0, 2);
        break;
      case 1: {
        Method& m = c.methods[Int(0, static_cast<int>(c.methods.size()) - 1)];
        m.marks ^= 1u << Int(1, 2);
        break;
      }
      case 2:
        if (!c.fields.empty()) {
          c.fields[Int(0, static_cast<int>(c.fields.size()) - 1)].type = RandomType();
        } else {
          c.fields.push_back({Fresh("f"), RandomType(), {}});
        }
        break;
      case 3: {
        Method& m = c.methods[Int(0, static_cast<int>(c.methods.size()) - 1)];
        m.abstract = false;
        m.body.clear();
        FillBody(m);
        break;
      }
      case 4:
        c.fields.push_back({Fresh("f"), RandomType(), {}});
        break;
      case 5:
        if (c.methods.size() > 1) {
          c.methods.erase(c.methods.begin() + Int(0, static_cast<int>(c.methods.size()) - 1));
        } else {
          c.methods[0].ret = RandomType();
        }
        break;
      case 6:
        c.super = Super(static_cast<int>(index) - 1);
        break;
      case 7: {
        Method m = Signature();
        if (!m.abstract) FillBody(m);
        c.methods.push_back(std::move(m));
        break;
      }
      default: {
        Method& m = c.methods[Int(0, static_cast<int>(c.methods.size()) - 1)];
        if (!m.params.empty()) m.params.back().type = RandomType();
        else m.params.push_back({Fresh("p"), RandomType(), {}});
        break;
      }
    }
    return c.file;
  }

 private:
  unsigned Marks(double a1, double a2, double a3) {
    unsigned m = 0;
    if (Chance(a1)) m |= kA1;
    if (Chance(a2)) m |= kA2;
    if (Chance(a3)) m |= kA3;
    return m;
  }

  std::string Fresh(const std::string& prefix) { return prefix + std::to_string(counter_++); }

  void ReserveCounters(const Program& p) {
    int max = 0;
    auto bump = [&](const std::string& name) {
      if (name.size() < 2) return;
      const std::string digits = name.substr(1);
      if (std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        max = std::max(max, std::stoi(digits) + 1);
      }
    };
    std::function<void(const std::vector<Stmt>&)> walk = [&](const std::vector<Stmt>& ss) {
      for (const Stmt& s : ss) {
        if (s.kind == Stmt::Kind::kLocal) bump(s.name);
        walk(s.body);
        walk(s.other);
      }
    };
    for (const Class& c : p.classes) {
      for (const Field& f : c.fields) bump(f.name);
      for (const Method& m : c.methods) {
        bump(m.name);
        for (const Param& q : m.params) bump(q.name);
        walk(m.body);
      }
    }
    counter_ = std::max(counter_, max);
  }

  std::optional<Type> Super(int below) {
    if (below > 0 && Chance(0.35)) return Type{class_names_[Int(0, below - 1)], {}, 0};
    if (Chance(0.1)) return Type{"List", {ClassType()}, 0};
    return std::nullopt;
  }

  Type ClassType() { return Type{Pick(class_names_), {}, 0}; }

  Type RandomType() {
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.15) return {"int", {}, 0};
    if (r < 0.25) return {"String", {}, 0};
    if (r < 0.30) return {"Ext", {}, 0};
    if (r < 0.75) return ClassType();
    if (r < 0.90) return {"List", {Chance(0.8) ? ClassType() : Type{"String", {}, 0}}, 0};
    Type t = ClassType();
    t.dims = 1;
    return t;
  }

  Method Signature() {
    Method m;
    m.name = Fresh("m");
    m.marks = Marks(0, 0.25, 0.2);
    const int params = Int(0, 2);
    for (int i = 0; i < params; ++i) m.params.push_back({Fresh("p"), RandomType(), {}});
    if (!Chance(0.4)) m.ret = RandomType();
    m.abstract = Chance(0.1);
    return m;
  }

  void CollectPools(const Program& p) {
    fields_.clear();
    methods_.clear();
    for (const Class& c : p.classes) {
      for (const Field& f : c.fields) fields_.push_back(f.name);
      for (const Method& m : c.methods) methods_.emplace_back(m.name, m.params.size());
    }
    if (fields_.empty()) fields_.push_back("nothing");
  }

  // ---- Bodies ----

  void FillBody(Method& m) {
    scopes_.assign(1, {});
    for (const Param& q : m.params) scopes_[0].push_back(q.name);
    ever_declared_.clear();
    budget_ = Int(0, limits_.max_statements);
    m.body = Stmts(0);
  }

  std::vector<Stmt> Stmts(int depth) {
    std::vector<Stmt> out;
    const int want = depth == 0 ? budget_ : Int(0, std::min(budget_, 3));
    for (int i = 0; i < want && budget_ > 0; ++i) {
      --budget_;
      out.push_back(MakeStmt(depth));
    }
    return out;
  }

  std::vector<Stmt> Scoped(int depth) {
    scopes_.emplace_back();
    std::vector<Stmt> out = Stmts(depth + 1);
    scopes_.pop_back();
    return out;
  }

  Stmt MakeStmt(int depth) {
    Stmt s;
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    const bool nest = depth < 2;
    if (r < 0.3) {
      s.kind = Stmt::Kind::kLocal;
      s.type = RandomType();
      s.name = Fresh("l");
      if (Chance(0.75)) s.exprs.push_back(MakeExpr(3));
      scopes_.back().push_back(s.name);
      ever_declared_.push_back(s.name);
    } else if (r < 0.6) {
      s.kind = Stmt::Kind::kExpr;
      s.exprs.push_back(MakeExpr(3));
    } else if (r < 0.7) {
      s.kind = Stmt::Kind::kAssign;
      Expr target = Chance(0.7) ? VarExpr() : FieldExpr(2);
      s.exprs.push_back(std::move(target));
      s.exprs.push_back(MakeExpr(3));
    } else if (r < 0.8) {
      s.kind = Stmt::Kind::kReturn;
      if (Chance(0.7)) s.exprs.push_back(MakeExpr(3));
    } else if (r < 0.88 && nest) {
      s.kind = Stmt::Kind::kIf;
      s.exprs.push_back(MakeExpr(2));
      s.body = Scoped(depth);
      s.other = Scoped(depth);
    } else if (r < 0.94 && nest) {
      s.kind = Stmt::Kind::kWhile;
      s.exprs.push_back(MakeExpr(2));
      s.body = Scoped(depth);
    } else if (nest) {
      s.kind = Stmt::Kind::kBlock;
      s.body = Scoped(depth);
    } else {
      s.kind = Stmt::Kind::kExpr;
      s.exprs.push_back(MakeExpr(3));
    }
    return s;
  }

  std::vector<std::string> InScope() const {
    std::vector<std::string> out;
    for (const auto& scope : scopes_) out.insert(out.end(), scope.begin(), scope.end());
    return out;
  }

  Expr VarExpr() {
    Expr e;
    e.kind = Expr::Kind::kVar;
    const std::vector<std::string> visible = InScope();
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.6 && !visible.empty()) {
      e.name = Pick(visible);
    } else if (r < 0.82) {
      e.name = Pick(fields_);
    } else if (r < 0.9) {
      // Out of scope: declared in a closed block, or not yet declared.
      if (!ever_declared_.empty() && Chance(0.5)) e.name = Pick(ever_declared_);
      else e.name = "l" + std::to_string(counter_ + Int(0, 2));
    } else if (r < 0.95) {
      e.name = "ghost";
    } else {
      e.name = Pick(class_names_);
    }
    return e;
  }

  Expr Receiver(int depth) {
    if (depth <= 0) return VarExpr();
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.6) return VarExpr();
    if (r < 0.8) return FieldExpr(depth);
    return CallExpr(depth);
  }

  Expr FieldExpr(int depth) {
    Expr e;
    e.kind = Expr::Kind::kField;
    e.has_receiver = true;
    e.kids.push_back(Receiver(depth - 1));
    e.name = Pick(fields_);
    return e;
  }

  Expr CallExpr(int depth) {
    Expr e;
    e.kind = Expr::Kind::kCall;
    const auto& [name, arity] = methods_.empty()
                                    ? std::pair<std::string, std::size_t>{"absent", 0}
                                    : Pick(methods_);
    e.name = Chance(0.93) ? name : "external";
    std::size_t n = arity;
    if (Chance(0.15)) n = static_cast<std::size_t>(Int(0, 2));
    if (Chance(0.7)) {
      e.has_receiver = true;
      e.kids.push_back(Receiver(depth - 1));
    }
    for (std::size_t i = 0; i < n; ++i) e.kids.push_back(MakeExpr(depth - 1));
    return e;
  }

  Expr Simple(int depth) {
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.2 || depth <= 0) return Literal();
    if (r < 0.55) return VarExpr();
    if (r < 0.7) return FieldExpr(depth);
    if (r < 0.9) return CallExpr(depth);
    return NewExpr();
  }

  Expr Literal() {
    Expr e;
    const int k = Int(0, 2);
    e.kind = k == 0 ? Expr::Kind::kInt : k == 1 ? Expr::Kind::kStr : Expr::Kind::kNull;
    return e;
  }

  Expr NewExpr() {
    Expr e;
    e.kind = Expr::Kind::kNew;
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.75) e.type = ClassType();
    else if (r < 0.92) e.type = {"List", {ClassType()}, 0};
    else e.type = {"Ext", {}, 0};
    return e;
  }

  Expr MakeExpr(int depth) {
    if (depth <= 0) return Chance(0.5) ? Literal() : VarExpr();
    const double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.12) return Literal();
    if (r < 0.4) return VarExpr();
    if (r < 0.52) return FieldExpr(depth);
    if (r < 0.74) return CallExpr(depth);
    if (r < 0.84) return NewExpr();
    if (r < 0.92) {
      Expr e;
      e.kind = Expr::Kind::kCast;
      e.type = RandomType();
      e.kids.push_back(Simple(depth - 1));
      return e;
    }
    Expr e;
    e.kind = Expr::Kind::kBin;
    e.name = Chance(0.7) ? "+" : "<";
    e.kids.push_back(Simple(depth - 1));
    e.kids.push_back(Simple(depth - 1));
    return e;
  }

  std::mt19937_64& rng_;
  Limits limits_;
  int counter_ = 0;
  int budget_ = 0;
  std::vector<std::string> class_names_;
  std::vector<std::string> fields_;
  std::vector<std::pair<std::string, std::size_t>> methods_;
  std::vector<std::vector<std::string>> scopes_;
  std::vector<std::string> ever_declared_;
};

// ---- Rendering ----

class Writer {
 public:
  Loc Here() const { return {line_, col_}; }
  void Put(const std::string& s) {
    for (char c : s) {
      out_ += c;
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }
  void Indent(int n) { Put(std::string(static_cast<std::size_t>(n), ' ')); }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
  int line_ = 1;
  int col_ = 1;
};

std::string TypeText(const Type& t) {
  std::string s = t.name;
  if (!t.args.empty()) {
    s += "<";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) s += ", ";
      s += TypeText(t.args[i]);
    }
    s += ">";
  }
  for (int i = 0; i < t.dims; ++i) s += "[]";
  return s;
}

void PutMarks(Writer& w, unsigned marks, int indent) {
  static const char* kNames[] = {"PersonalData", "PersonalDataHandler", "PersonalDataEndpoint"};
  for (int bit = 0; bit < 3; ++bit) {
    if (marks & (1u << bit)) {
      w.Indent(indent);
      w.Put(std::string("@") + kNames[bit] + "\n");
    }
  }
}

void PutExpr(Writer& w, Expr& e) {
  e.loc = w.Here();
  switch (e.kind) {
    case Expr::Kind::kInt: w.Put("7"); break;
    case Expr::Kind::kStr: w.Put("\"s\""); break;
    case Expr::Kind::kNull: w.Put("null"); break;
    case Expr::Kind::kVar: w.Put(e.name); break;
    case Expr::Kind::kField:
      PutExpr(w, e.kids[0]);
      w.Put("." + e.name);
      break;
    case Expr::Kind::kCall: {
      std::size_t first = 0;
      if (e.has_receiver) {
        PutExpr(w, e.kids[0]);
        w.Put(".");
        first = 1;
      }
      w.Put(e.name + "(");
      for (std::size_t i = first; i < e.kids.size(); ++i) {
        if (i > first) w.Put(", ");
        PutExpr(w, e.kids[i]);
      }
      w.Put(")");
      break;
    }
    case Expr::Kind::kNew: w.Put("new " + TypeText(e.type) + "()"); break;
    case Expr::Kind::kCast:
      w.Put("(" + TypeText(e.type) + ") ");
      PutExpr(w, e.kids[0]);
      break;
    case Expr::Kind::kBin:
      PutExpr(w, e.kids[0]);
      w.Put(" " + e.name + " ");
      PutExpr(w, e.kids[1]);
      break;
  }
}

void PutStmts(Writer& w, std::vector<Stmt>& stmts, int indent);

void PutStmt(Writer& w, Stmt& s, int indent) {
  w.Indent(indent);
  s.loc = w.Here();
  switch (s.kind) {
    case Stmt::Kind::kLocal:
      w.Put(TypeText(s.type) + " " + s.name);
      if (!s.exprs.empty()) {
        w.Put(" = ");
        PutExpr(w, s.exprs[0]);
      }
      w.Put(";\n");
      break;
    case Stmt::Kind::kAssign:
      PutExpr(w, s.exprs[0]);
      w.Put(" = ");
      PutExpr(w, s.exprs[1]);
      w.Put(";\n");
      break;
    case Stmt::Kind::kExpr:
      PutExpr(w, s.exprs[0]);
      w.Put(";\n");
      break;
    case Stmt::Kind::kReturn:
      w.Put("return");
      if (!s.exprs.empty()) {
        w.Put(" ");
        PutExpr(w, s.exprs[0]);
      }
      w.Put(";\n");
      break;
    case Stmt::Kind::kIf:
      w.Put("if (");
      PutExpr(w, s.exprs[0]);
      w.Put(") {\n");
      PutStmts(w, s.body, indent + 2);
      w.Indent(indent);
      w.Put("} else {\n");
      PutStmts(w, s.other, indent + 2);
      w.Indent(indent);
      w.Put("}\n");
      break;
    case Stmt::Kind::kWhile:
      w.Put("while (");
      PutExpr(w, s.exprs[0]);
      w.Put(") {\n");
      PutStmts(w, s.body, indent + 2);
      w.Indent(indent);
      w.Put("}\n");
      break;
    case Stmt::Kind::kBlock:
      w.Put("{\n");
      PutStmts(w, s.body, indent + 2);
      w.Indent(indent);
      w.Put("}\n");
      break;
  }
}

void PutStmts(Writer& w, std::vector<Stmt>& stmts, int indent) {
  for (Stmt& s : stmts) PutStmt(w, s, indent);
}

void PutClass(Writer& w, Class& c) {
  PutMarks(w, c.marks, 0);
  c.loc = w.Here();
  w.Put("class " + c.name);
  if (!c.type_params.empty()) {
    w.Put("<");
    for (std::size_t i = 0; i < c.type_params.size(); ++i) {
      if (i) w.Put(", ");
      w.Put(c.type_params[i]);
    }
    w.Put(">");
  }
  if (c.super) w.Put(" extends " + TypeText(*c.super));
  w.Put(" {\n");
  for (Field& f : c.fields) {
    w.Indent(2);
    f.loc = w.Here();
    w.Put(TypeText(f.type) + " " + f.name + ";\n");
  }
  for (Method& m : c.methods) {
    PutMarks(w, m.marks, 2);
    w.Indent(2);
    m.loc = w.Here();
    w.Put((m.ret ? TypeText(*m.ret) : "void") + " " + m.name + "(");
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i) w.Put(", ");
      m.params[i].loc = w.Here();
      w.Put(TypeText(m.params[i].type) + " " + m.params[i].name);
    }
    if (m.abstract) {
      w.Put(");\n");
      continue;
    }
    w.Put(") {\n");
    PutStmts(w, m.body, 4);
    w.Put("  }\n");
  }
  w.Put("}\n");
}

}  // namespace

std::string Program::FileName(int file) const {
  return "src/f" + std::to_string(file) + ".al";
}

std::string Program::RenderFile(int file) {
  Writer w;
  w.Put("// generated\n");
  for (Class& c : classes) {
    if (c.file != file) continue;
    w.Put("\n");
    PutClass(w, c);
  }
  return w.Take();
}

std::map<std::string, std::string> Program::Render() {
  std::map<std::string, std::string> out;
  for (int f = 0; f < file_count; ++f) out[FileName(f)] = RenderFile(f);
  return out;
}

Program Generate(std::mt19937_64& rng, const Limits& limits) {
  return Generator(rng, limits).Make();
}

int MutateOneFile(Program& program, std::mt19937_64& rng, const Limits& limits) {
  return Generator(rng, limits).Mutate(program);
}

// ---- Checking ----

bool Finding::operator<(const Finding& o) const {
  return std::tie(file, line, col, rule, message) <
         std::tie(o.file, o.line, o.col, o.rule, o.message);
}
bool Finding::operator==(const Finding& o) const {
  return std::tie(file, line, col, rule, message) ==
         std::tie(o.file, o.line, o.col, o.rule, o.message);
}
std::string Finding::ToString() const {
  std::ostringstream s;
  s << file << ":" << line << ":" << col << ": warning[" << rule << "]: " << message;
  return s.str();
}

namespace {

// A type as the checker sees it.
struct RT {
  enum class K { kClass, kPrim, kUnknown, kVoid };
  K k = K::kUnknown;
  std::string name;
  std::vector<RT> args;
  int dims = 0;
};

struct Info {
  RT type;
  bool class_ref = false;
  // Calls only.
  bool resolved = false;
  unsigned callee_marks = 0;
  std::string callee;
};

using Env = std::map<std::string, RT>;

class Checker {
 public:
  explicit Checker(const Program& p) : program_(p) {
    for (const Class& c : p.classes) classes_.emplace(c.name, &c);
  }

  std::vector<Finding> Run() {
    for (const Class& c : program_.classes) CheckClass(c);
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return out_;
  }

 private:
  const Class* Find(const std::string& name) const {
    auto it = classes_.find(name);
    return it == classes_.end() ? nullptr : it->second;
  }

  RT Resolve(const Type& t, const Env& env) const {
    if (auto it = env.find(t.name); it != env.end()) {
      RT r = it->second;
      r.dims += t.dims;
      return r;
    }
    RT r;
    r.name = t.name;
    r.dims = t.dims;
    if (t.name == "int" || t.name == "String") {
      r.k = RT::K::kPrim;
      return r;
    }
    r.k = Find(t.name) ? RT::K::kClass : RT::K::kUnknown;
    for (const Type& a : t.args) r.args.push_back(Resolve(a, env));
    return r;
  }

  Env Bind(const Class& c, const std::vector<RT>& args) const {
    Env env;
    for (std::size_t i = 0; i < c.type_params.size(); ++i) {
      if (args.size() == c.type_params.size()) {
        env[c.type_params[i]] = args[i];
      } else {
        env[c.type_params[i]] = RT{RT::K::kUnknown, c.type_params[i], {}, 0};
      }
    }
    return env;
  }

  bool ClassPersonal(const std::string& name) const {
    std::set<std::string> seen;
    const Class* c = Find(name);
    while (c && seen.insert(c->name).second) {
      if (c->marks & kA1) return true;
      c = c->super ? Find(c->super->name) : nullptr;
    }
    return false;
  }

  std::optional<std::string> Subject(const RT& t) const {
    if (t.k == RT::K::kClass && ClassPersonal(t.name)) return t.name;
    for (const RT& a : t.args) {
      if (auto s = Subject(a)) return s;
    }
    return std::nullopt;
  }

  // Walks the superclass chain of `recv`, calling `visit` with each class
  // and its type environment until it returns true.
  template <typename Visit>
  void Chain(const RT& recv, Visit visit) const {
    if (recv.k != RT::K::kClass || recv.dims != 0) return;
    RT cur = recv;
    std::set<std::string> seen;
    while (seen.insert(cur.name).second) {
      const Class* c = Find(cur.name);
      if (!c) return;
      const Env env = Bind(*c, cur.args);
      if (visit(*c, env)) return;
      if (!c->super || !Find(c->super->name)) return;
      cur = Resolve(*c->super, env);
    }
  }

  std::optional<RT> FieldOf(const RT& recv, const std::string& name) const {
    std::optional<RT> out;
    Chain(recv, [&](const Class& c, const Env& env) {
      for (const Field& f : c.fields) {
        if (f.name == name) {
          out = Resolve(f.type, env);
          return true;
        }
      }
      return false;
    });
    return out;
  }

  struct Found {
    const Class* owner;
    const Method* method;
    RT ret;
  };

  std::optional<Found> MethodOf(const RT& recv, const std::string& name,
                                std::size_t arity) const {
    std::optional<Found> out;
    Chain(recv, [&](const Class& c, const Env& env) {
      for (const Method& m : c.methods) {
        if (m.name == name && m.params.size() == arity) {
          RT ret = m.ret ? Resolve(*m.ret, env) : RT{RT::K::kVoid, "void", {}, 0};
          out = Found{&c, &m, ret};
          return true;
        }
      }
      return false;
    });
    return out;
  }

  void Emit(const Loc& loc, const std::string& rule, const std::string& message) {
    out_.push_back({program_.FileName(cls_->file), loc.line, loc.col, rule, message});
  }

  void R2(const Loc& loc, const std::string& subject, const std::string& owner) {
    Emit(loc, "R2", "personal data '" + subject + "' used outside handler context in '" +
                        owner + "'");
  }

  void CheckClass(const Class& c) {
    cls_ = &c;
    Env decl_env;
    for (const std::string& p : c.type_params) decl_env[p] = RT{RT::K::kUnknown, p, {}, 0};
    env_ = decl_env;
    self_ = RT{RT::K::kClass, c.name, {}, 0};
    for (const std::string& p : c.type_params) self_.args.push_back(decl_env[p]);

    if (!(c.marks & kA2)) {
      for (const Field& f : c.fields) {
        if (auto s = Subject(Resolve(f.type, env_))) R2(f.loc, *s, c.name);
      }
    }
    for (const Method& m : c.methods) CheckMethod(c, m);
  }

  void CheckMethod(const Class& c, const Method& m) {
    handler_ = ((c.marks | m.marks) & kA2) != 0;
    owner_ = c.name + "." + m.name;
    if (!handler_) {
      for (const Param& p : m.params) {
        if (auto s = Subject(Resolve(p.type, env_))) R2(p.loc, *s, owner_);
      }
      if (m.ret) {
        if (auto s = Subject(Resolve(*m.ret, env_))) R2(m.loc, *s, owner_);
      }
    }
    if (m.abstract) return;
    all_locals_.clear();
    CollectLocals(m.body);
    scopes_.assign(1, {});
    for (const Param& p : m.params) scopes_[0][p.name] = Resolve(p.type, env_);
    scopes_.emplace_back();
    Walk(m.body);
  }

  void CollectLocals(const std::vector<Stmt>& ss) {
    for (const Stmt& s : ss) {
      if (s.kind == Stmt::Kind::kLocal) all_locals_.insert(s.name);
      CollectLocals(s.body);
      CollectLocals(s.other);
    }
  }

  void Walk(const std::vector<Stmt>& ss) {
    for (const Stmt& s : ss) Visit(s);
  }

  void Scoped(const std::vector<Stmt>& ss) {
    scopes_.emplace_back();
    Walk(ss);
    scopes_.pop_back();
  }

  void Top(const Expr& e, bool parent_personal) {
    TypeOf(e);
    Report(e, parent_personal);
  }

  void Visit(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::kLocal: {
        const RT t = Resolve(s.type, env_);
        const auto subject = Subject(t);
        if (!s.exprs.empty()) Top(s.exprs[0], subject.has_value());
        scopes_.back()[s.name] = t;
        if (subject && !handler_) R2(s.loc, *subject, owner_);
        break;
      }
      case Stmt::Kind::kAssign:
      case Stmt::Kind::kExpr:
      case Stmt::Kind::kReturn:
        for (const Expr& e : s.exprs) Top(e, false);
        break;
      case Stmt::Kind::kIf:
        Top(s.exprs[0], false);
        Scoped(s.body);
        Scoped(s.other);
        break;
      case Stmt::Kind::kWhile:
        Top(s.exprs[0], false);
        Scoped(s.body);
        break;
      case Stmt::Kind::kBlock:
        Scoped(s.body);
        break;
    }
  }

  const RT* Lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (auto f = it->find(name); f != it->end()) return &f->second;
    }
    return nullptr;
  }

  const Info& TypeOf(const Expr& e) {
    Info info;
    switch (e.kind) {
      case Expr::Kind::kInt: info.type = {RT::K::kPrim, "int", {}, 0}; break;
      case Expr::Kind::kStr: info.type = {RT::K::kPrim, "String", {}, 0}; break;
      case Expr::Kind::kNull: info.type = {RT::K::kPrim, "null", {}, 0}; break;
      case Expr::Kind::kVar:
        if (const RT* local = Lookup(e.name)) {
          info.type = *local;
        } else if (auto field = FieldOf(self_, e.name)) {
          info.type = *field;
        } else if (Find(e.name)) {
          info.type = {RT::K::kClass, e.name, {}, 0};
          info.class_ref = true;
        } else {
          if (all_locals_.count(e.name)) {
            Emit(e.loc, "SEMA", "'" + e.name + "' used before its declaration");
          }
          info.type = {};
        }
        break;
      case Expr::Kind::kField: {
        const RT recv = TypeOf(e.kids[0]).type;
        info.type = FieldOf(recv, e.name).value_or(RT{});
        break;
      }
      case Expr::Kind::kCall: {
        std::optional<Found> found;
        std::size_t first = 0;
        std::string recv_name;
        if (e.has_receiver) {
          const RT recv = TypeOf(e.kids[0]).type;
          recv_name = recv.name;
          first = 1;
          found = MethodOf(recv, e.name, e.kids.size() - 1);
        } else {
          found = MethodOf(self_, e.name, e.kids.size());
        }
        for (std::size_t i = first; i < e.kids.size(); ++i) TypeOf(e.kids[i]);
        if (found) {
          info.resolved = true;
          info.callee = found->owner->name + "." + e.name;
          info.callee_marks = found->owner->marks | found->method->marks;
          info.type = found->ret;
        } else {
          info.callee = recv_name.empty() ? e.name : recv_name + "." + e.name;
          info.type = {};
        }
        break;
      }
      case Expr::Kind::kNew:
        info.type = Resolve(e.type, env_);
        break;
      case Expr::Kind::kCast:
        TypeOf(e.kids[0]);
        info.type = Resolve(e.type, env_);
        break;
      case Expr::Kind::kBin: {
        const RT l = TypeOf(e.kids[0]).type;
        const RT r = TypeOf(e.kids[1]).type;
        auto is_string = [](const RT& t) {
          return t.k == RT::K::kPrim && t.name == "String" && t.dims == 0 && t.args.empty();
        };
        if (e.name == "<") info.type = {RT::K::kPrim, "boolean", {}, 0};
        else if (is_string(l) || is_string(r)) info.type = {RT::K::kPrim, "String", {}, 0};
        else info.type = {RT::K::kPrim, "int", {}, 0};
        break;
      }
    }
    return infos_[&e] = std::move(info);
  }

  void Report(const Expr& e, bool parent_personal) {
    const Info& info = infos_.at(&e);
    const auto subject = info.class_ref ? std::nullopt : Subject(info.type);
    if (subject && !parent_personal && !handler_) R2(e.loc, *subject, owner_);
    if (e.kind == Expr::Kind::kCall && handler_) {
      const bool outside = !info.resolved || (info.callee_marks & (kA2 | kA3)) == 0;
      if (outside) {
        for (std::size_t i = e.has_receiver ? 1 : 0; i < e.kids.size(); ++i) {
          const Info& arg = infos_.at(&e.kids[i]);
          if (arg.class_ref) continue;
          if (auto s = Subject(arg.type)) {
            Emit(e.loc, "R3", "personal data '" + *s + "' passed to non-endpoint '" +
                                  info.callee + "' from handler context");
            break;
          }
        }
      }
    }
    for (const Expr& kid : e.kids) Report(kid, subject.has_value());
  }

  const Program& program_;
  std::map<std::string, const Class*> classes_;
  const Class* cls_ = nullptr;
  Env env_;
  RT self_;
  bool handler_ = false;
  std::string owner_;
  std::set<std::string> all_locals_;
  std::vector<std::map<std::string, RT>> scopes_;
  std::unordered_map<const Expr*, Info> infos_;
  std::vector<Finding> out_;
};

}  // namespace

std::vector<Finding> Check(const Program& program) { return Checker(program).Run(); }

}  // namespace oracle
