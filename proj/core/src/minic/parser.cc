// Copyright 2026 The VulnLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vulnlens/minic/parser.h"

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vulnlens/common/error.h"

namespace vulnlens::minic {

namespace {

struct Symbol {
  bool is_array = false;
};

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

  Function Run() {
    Function fn;
    const Token& type = Expect(TokenKind::kKeyword, "int");
    fn.span = type.span;
    fn.name = ExpectIdentifier().text;
    Expect(TokenKind::kPunct, "(");
    scopes_.emplace_back();
    if (!Peek().IsPunct(")")) {
      while (true) {
        Param param;
        const Token& ptype = Expect(TokenKind::kKeyword, "int");
        const Token& name = ExpectIdentifier();
        param.name = name.text;
        param.span = Cover(ptype.span, name.span);
        if (Accept("[")) {
          param.array_size = ExpectArraySize();
          param.span = Cover(param.span, Expect(TokenKind::kPunct, "]").span);
        }
        Declare(param.name, param.array_size.has_value(), param.span);
        fn.params.push_back(std::move(param));
        if (!Accept(",")) break;
      }
    }
    Expect(TokenKind::kPunct, ")");
    function_name_ = fn.name;
    param_count_ = fn.params.size();
    if (IsVisible(fn.name)) {
      throw ScopeError("parameter shadows function name '" + fn.name + "'");
    }
    fn.body = ParseBraced(/*new_scope=*/true);
    scopes_.pop_back();
    fn.span = Cover(fn.span, fn.body.span);
    if (pos_ != tokens_.size()) {
      Fail("end of input");
    }
    return fn;
  }

 private:
  // ---- token helpers ----
  const Token& Peek(std::size_t ahead = 0) const {
    static const Token kEndToken{};
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : kEndToken;
  }

  [[noreturn]] void Fail(std::string_view expected) const {
    const Token& found = Peek();
    std::string where;
    if (pos_ < tokens_.size()) {
      where = found.span.ToString();
    } else if (!tokens_.empty()) {
      where = tokens_.back().span.ToString() + " (after)";
    } else {
      where = "1:1";
    }
    const std::string found_text =
        pos_ < tokens_.size() ? "'" + found.text + "'" : std::string("end of input");
    throw ParseError("expected " + std::string(expected) + " but found " + found_text + " at " +
                     where);
  }

  const Token& Expect(TokenKind kind, std::string_view text) {
    if (pos_ >= tokens_.size() || !Peek().Is(kind, text)) {
      Fail("'" + std::string(text) + "'");
    }
    return tokens_[pos_++];
  }

  const Token& ExpectIdentifier() {
    if (pos_ >= tokens_.size() || Peek().kind != TokenKind::kIdentifier) Fail("identifier");
    return tokens_[pos_++];
  }

  std::int64_t ExpectArraySize() {
    if (pos_ >= tokens_.size() || Peek().kind != TokenKind::kIntLiteral) {
      Fail("array size literal");
    }
    const Token& tok = tokens_[pos_++];
    if (tok.value <= 0) {
      throw ParseError("array size must be positive at " + tok.span.ToString());
    }
    return tok.value;
  }

  bool Accept(std::string_view punct) {
    if (pos_ < tokens_.size() && Peek().IsPunct(punct)) {
      ++pos_;
      return true;
    }
    return false;
  }

  const Token& Previous() const { return tokens_[pos_ - 1]; }

  // ---- scopes ----
  bool IsVisible(const std::string& name) const {
    for (const auto& scope : scopes_) {
      if (scope.count(name)) return true;
    }
    return false;
  }

  const Symbol* Lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return &found->second;
    }
    return nullptr;
  }

  void Declare(const std::string& name, bool is_array, const SourceSpan& span) {
    if (name == kReadInt || name == kPrintInt) {
      throw ScopeError("'" + name + "' is reserved at " + span.ToString());
    }
    if (IsVisible(name) || name == function_name_) {
      throw ScopeError("redeclaration of '" + name + "' at " + span.ToString());
    }
    scopes_.back()[name] = Symbol{is_array};
  }

  // ---- blocks and statements ----
  Block ParseBraced(bool new_scope) {
    Block block;
    const Token& open = Expect(TokenKind::kPunct, "{");
    if (new_scope) scopes_.emplace_back();
    while (pos_ < tokens_.size() && !Peek().IsPunct("}")) {
      block.stmts.push_back(ParseStmt());
    }
    const Token& close = Expect(TokenKind::kPunct, "}");
    if (new_scope) scopes_.pop_back();
    block.span = Cover(open.span, close.span);
    return block;
  }

  // Body of if/else/while/for: a braced block or a single statement wrapped
  // into a block.
  Block ParseBody() {
    if (Peek().IsPunct("{")) return ParseBraced(true);
    scopes_.emplace_back();
    Block block;
    block.stmts.push_back(ParseStmt());
    scopes_.pop_back();
    block.span = block.stmts.back().span;
    return block;
  }

  Stmt ParseStmt() {
    const Token& tok = Peek();
    if (tok.IsPunct("{")) {
      Block block = ParseBraced(true);
      const SourceSpan span = block.span;
      return Stmt{std::move(block), span};
    }
    if (tok.IsKeyword("int")) {
      Stmt stmt = ParseDecl();
      stmt.span = Cover(stmt.span, Expect(TokenKind::kPunct, ";").span);
      return stmt;
    }
    if (tok.IsKeyword("if")) return ParseIf();
    if (tok.IsKeyword("while")) return ParseWhile();
    if (tok.IsKeyword("for")) return ParseFor();
    if (tok.IsKeyword("switch")) return ParseSwitch();
    if (tok.IsKeyword("break")) {
      ++pos_;
      if (breakable_depth_ == 0) {
        throw ScopeError("'break' outside loop or switch at " + tok.span.ToString());
      }
      const Token& semi = Expect(TokenKind::kPunct, ";");
      return Stmt{Break{}, Cover(tok.span, semi.span)};
    }
    if (tok.IsKeyword("return")) {
      ++pos_;
      Return ret;
      if (!Peek().IsPunct(";")) ret.value = ParseExpr();
      const Token& semi = Expect(TokenKind::kPunct, ";");
      return Stmt{std::move(ret), Cover(tok.span, semi.span)};
    }
    if (tok.kind == TokenKind::kKeyword) Fail("statement");
    Stmt stmt = ParseSimple();
    stmt.span = Cover(stmt.span, Expect(TokenKind::kPunct, ";").span);
    return stmt;
  }

  // Declaration without the trailing semicolon.
  Stmt ParseDecl() {
    const Token& kw = Expect(TokenKind::kKeyword, "int");
    const Token& name = ExpectIdentifier();
    Decl decl;
    decl.name = name.text;
    SourceSpan span = Cover(kw.span, name.span);
    if (Accept("[")) {
      decl.array_size = ExpectArraySize();
      span = Cover(span, Expect(TokenKind::kPunct, "]").span);
    }
    if (Accept("=")) {
      if (decl.array_size) {
        throw ParseError("array declaration cannot have an initializer at " + span.ToString());
      }
      // The name is not visible in its own initializer.
      decl.init = ParseExpr();
      span = Cover(span, decl.init->span);
    }
    Declare(decl.name, decl.array_size.has_value(), span);
    return Stmt{std::move(decl), span};
  }

  // Assignment or expression statement without the trailing semicolon.
  Stmt ParseSimple() {
    Expr lhs = ParseExpr();
    if (Accept("=")) {
      if (lhs.Is<Ident>()) {
        const Symbol* sym = Lookup(lhs.As<Ident>().name);
        if (sym && sym->is_array) {
          throw ScopeError("cannot assign to array '" + lhs.As<Ident>().name + "' at " +
                           lhs.span.ToString());
        }
      } else if (!lhs.Is<Index>()) {
        throw ParseError("invalid assignment target at " + lhs.span.ToString());
      }
      Expr rhs = ParseExpr();
      const SourceSpan span = Cover(lhs.span, rhs.span);
      return Stmt{Assign{std::move(lhs), std::move(rhs)}, span};
    }
    const SourceSpan span = lhs.span;
    return Stmt{ExprStmt{std::move(lhs)}, span};
  }

  Stmt ParseIf() {
    const Token& kw = Expect(TokenKind::kKeyword, "if");
    Expect(TokenKind::kPunct, "(");
    If stmt;
    stmt.cond = ParseExpr();
    stmt.header = Cover(kw.span, Expect(TokenKind::kPunct, ")").span);
    stmt.then_block = ParseBody();
    SourceSpan span = Cover(stmt.header, stmt.then_block.span);
    if (Peek().IsKeyword("else")) {
      ++pos_;
      stmt.else_block = ParseBody();
      span = Cover(span, stmt.else_block->span);
    }
    return Stmt{std::move(stmt), span};
  }

  Stmt ParseWhile() {
    const Token& kw = Expect(TokenKind::kKeyword, "while");
    Expect(TokenKind::kPunct, "(");
    While stmt;
    stmt.cond = ParseExpr();
    stmt.header = Cover(kw.span, Expect(TokenKind::kPunct, ")").span);
    ++breakable_depth_;
    stmt.body = ParseBody();
    --breakable_depth_;
    const SourceSpan span = Cover(stmt.header, stmt.body.span);
    return Stmt{std::move(stmt), span};
  }

  Stmt ParseFor() {
    const Token& kw = Expect(TokenKind::kKeyword, "for");
    Expect(TokenKind::kPunct, "(");
    scopes_.emplace_back();  // init declarations are scoped to the loop
    For stmt;
    if (!Peek().IsPunct(";")) {
      Stmt init = Peek().IsKeyword("int") ? ParseDecl() : ParseSimple();
      if (init.Is<ExprStmt>()) {
        throw ParseError("for-loop initializer must be a declaration or assignment at " +
                         init.span.ToString());
      }
      stmt.init = Box<Stmt>(std::move(init));
    }
    Expect(TokenKind::kPunct, ";");
    if (!Peek().IsPunct(";")) stmt.cond = ParseExpr();
    Expect(TokenKind::kPunct, ";");
    if (!Peek().IsPunct(")")) stmt.update = Box<Stmt>(ParseSimple());
    stmt.header = Cover(kw.span, Expect(TokenKind::kPunct, ")").span);
    ++breakable_depth_;
    stmt.body = ParseBody();
    --breakable_depth_;
    scopes_.pop_back();
    const SourceSpan span = Cover(stmt.header, stmt.body.span);
    return Stmt{std::move(stmt), span};
  }

  Stmt ParseSwitch() {
    const Token& kw = Expect(TokenKind::kKeyword, "switch");
    Expect(TokenKind::kPunct, "(");
    Switch stmt;
    stmt.scrutinee = ParseExpr();
    stmt.header = Cover(kw.span, Expect(TokenKind::kPunct, ")").span);
    Expect(TokenKind::kPunct, "{");
    ++breakable_depth_;
    std::set<std::int64_t> labels;
    while (Peek().IsKeyword("case") || Peek().IsKeyword("default")) {
      const Token& head = tokens_[pos_++];
      const bool is_default = head.text == "default";
      std::int64_t label = 0;
      if (!is_default) {
        bool negative = Accept("-");
        if (Peek().kind != TokenKind::kIntLiteral) Fail("case label");
        label = negative ? -tokens_[pos_].value : tokens_[pos_].value;
        ++pos_;
        if (!labels.insert(label).second) {
          throw ParseError("duplicate case label " + std::to_string(label) + " at " +
                           head.span.ToString());
        }
        if (stmt.default_block) {
          throw ParseError("case after default at " + head.span.ToString());
        }
      } else if (stmt.default_block) {
        throw ParseError("duplicate default at " + head.span.ToString());
      }
      const Token& colon = Expect(TokenKind::kPunct, ":");
      Block body;
      body.span = Cover(head.span, colon.span);
      scopes_.emplace_back();
      while (pos_ < tokens_.size() && !Peek().IsKeyword("case") && !Peek().IsKeyword("default") &&
             !Peek().IsPunct("}")) {
        body.stmts.push_back(ParseStmt());
        body.span = Cover(body.span, body.stmts.back().span);
      }
      scopes_.pop_back();
      if (is_default) {
        stmt.default_block = std::move(body);
      } else {
        SwitchCase c;
        c.label = label;
        c.span = body.span;
        c.body = std::move(body);
        stmt.cases.push_back(std::move(c));
      }
    }
    --breakable_depth_;
    const Token& close = Expect(TokenKind::kPunct, "}");
    return Stmt{std::move(stmt), Cover(kw.span, close.span)};
  }

  // ---- expressions ----
  static std::optional<BinaryOp> AsBinary(const Token& tok) {
    if (tok.kind != TokenKind::kPunct) return std::nullopt;
    static const std::map<std::string, BinaryOp> kOps = {
        {"+", BinaryOp::kAdd}, {"-", BinaryOp::kSub}, {"*", BinaryOp::kMul},
        {"/", BinaryOp::kDiv}, {"%", BinaryOp::kMod}, {"<", BinaryOp::kLt},
        {"<=", BinaryOp::kLe}, {">", BinaryOp::kGt},  {">=", BinaryOp::kGe},
        {"==", BinaryOp::kEq}, {"!=", BinaryOp::kNe}, {"&&", BinaryOp::kAnd},
        {"||", BinaryOp::kOr}};
    auto it = kOps.find(tok.text);
    if (it == kOps.end()) return std::nullopt;
    return it->second;
  }

  Expr ParseExpr(int min_precedence = 1) {
    Expr lhs = ParseUnary();
    while (pos_ < tokens_.size()) {
      auto op = AsBinary(Peek());
      if (!op || Precedence(*op) < min_precedence) break;
      ++pos_;
      Expr rhs = ParseExpr(Precedence(*op) + 1);
      const SourceSpan span = Cover(lhs.span, rhs.span);
      lhs = Expr{Binary{*op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))}, span};
    }
    return lhs;
  }

  Expr ParseUnary() {
    if (Peek().IsPunct("-") || Peek().IsPunct("!")) {
      const Token& op = tokens_[pos_++];
      Expr operand = ParseUnary();
      const SourceSpan span = Cover(op.span, operand.span);
      return Expr{Unary{op.text == "-" ? UnaryOp::kNeg : UnaryOp::kNot,
                        Box<Expr>(std::move(operand))},
                  span};
    }
    return ParsePrimary();
  }

  Expr ParsePrimary() {
    const Token& tok = Peek();
    if (tok.kind == TokenKind::kIntLiteral) {
      ++pos_;
      return Expr{IntLit{tok.value}, tok.span};
    }
    if (tok.IsPunct("(")) {
      ++pos_;
      Expr inner = ParseExpr();
      Expect(TokenKind::kPunct, ")");
      return inner;
    }
    if (tok.kind != TokenKind::kIdentifier) Fail("expression");
    ++pos_;
    const std::string& name = tok.text;
    if (Accept("(")) {
      std::vector<Expr> args;
      if (!Peek().IsPunct(")")) {
        do {
          args.push_back(ParseExpr());
        } while (Accept(","));
      }
      const Token& close = Expect(TokenKind::kPunct, ")");
      CheckCall(name, args.size(), tok.span);
      return Expr{Call{name, std::move(args)}, Cover(tok.span, close.span)};
    }
    const Symbol* sym = Lookup(name);
    if (!sym) throw ScopeError("undeclared identifier '" + name + "' at " + tok.span.ToString());
    if (Accept("[")) {
      if (!sym->is_array) {
        throw ScopeError("'" + name + "' is not an array at " + tok.span.ToString());
      }
      Expr index = ParseExpr();
      const Token& close = Expect(TokenKind::kPunct, "]");
      return Expr{Index{name, Box<Expr>(std::move(index))}, Cover(tok.span, close.span)};
    }
    if (sym->is_array) {
      throw ScopeError("array '" + name + "' used as a scalar at " + tok.span.ToString());
    }
    return Expr{Ident{name}, tok.span};
  }

  void CheckCall(const std::string& name, std::size_t arity, const SourceSpan& span) const {
    if (Lookup(name)) {
      throw ScopeError("'" + name + "' is a variable, not a function, at " + span.ToString());
    }
    if (name == function_name_ && arity != param_count_) {
      throw ScopeError("recursive call to '" + name + "' with wrong arity at " + span.ToString());
    }
    if (name == kReadInt && arity != 0) {
      throw ScopeError("read_int takes no arguments at " + span.ToString());
    }
    if (name == kPrintInt && arity != 1) {
      throw ScopeError("print_int takes one argument at " + span.ToString());
    }
  }

  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::map<std::string, Symbol>> scopes_;
  std::string function_name_;
  std::size_t param_count_ = 0;
  int breakable_depth_ = 0;
};

}  // namespace

Function ParseFunction(std::span<const Token> tokens) { return Parser(tokens).Run(); }

Function ParseSource(std::string_view source) {
  const std::vector<Token> tokens = Tokenize(source);
  return ParseFunction(tokens);
}

}  // namespace vulnlens::minic
