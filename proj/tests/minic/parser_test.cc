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

#include <gtest/gtest.h>

#include "vulnlens/common/error.h"
#include "vulnlens/minic/parser.h"

namespace vulnlens::minic {
namespace {

TEST(ParserTest, ParamAndReturn) {
  const Function fn = ParseSource("int f(int a){ return a; }");
  EXPECT_EQ("f", fn.name);
  ASSERT_EQ(1u, fn.params.size());
  EXPECT_EQ("a", fn.params[0].name);
  ASSERT_EQ(1u, fn.body.stmts.size());
  ASSERT_TRUE(fn.body.stmts[0].Is<Return>());
  EXPECT_TRUE(fn.body.stmts[0].As<Return>().value->Is<Ident>());
}

TEST(ParserTest, IfWithoutElse) {
  const Function fn = ParseSource("int f(){ if (1) return 0; }");
  ASSERT_TRUE(fn.body.stmts[0].Is<If>());
  const If& branch = fn.body.stmts[0].As<If>();
  EXPECT_FALSE(branch.else_block.has_value());
  ASSERT_EQ(1u, branch.then_block.stmts.size());
  EXPECT_TRUE(branch.then_block.stmts[0].Is<Return>());
}

TEST(ParserTest, BreakOutsideLoopIsScopeError) {
  EXPECT_THROW(ParseSource("int f(){ break; }"), ScopeError);
}

TEST(ParserTest, UndeclaredIdentifierIsScopeError) {
  EXPECT_THROW(ParseSource("int f(){ return y; }"), ScopeError);
  EXPECT_THROW(ParseSource("int f(){ { int y; } return y; }"), ScopeError);
}

TEST(ParserTest, ShadowingIsRejected) {
  EXPECT_THROW(ParseSource("int f(int a){ { int a = 1; } return 0; }"), ScopeError);
  EXPECT_NO_THROW(ParseSource("int f(){ { int a = 1; } { int a = 2; } return 0; }"));
}

TEST(ParserTest, ArrayMisuseIsScopeError) {
  EXPECT_THROW(ParseSource("int f(){ int a[2]; return a; }"), ScopeError);
  EXPECT_THROW(ParseSource("int f(){ int a; return a[0]; }"), ScopeError);
}

TEST(ParserTest, ReportsExpectedAndFound) {
  try {
    ParseSource("int f(){ return 1 }");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("expected"), std::string::npos) << msg;
    EXPECT_NE(msg.find("found"), std::string::npos) << msg;
  }
}

TEST(ParserTest, PrecedenceAndAssociativity) {
  const Function fn = ParseSource("int f(){ return 1 - 2 - 3 * 4 < 5 && 6 || 7; }");
  const Expr& e = *fn.body.stmts[0].As<Return>().value;
  ASSERT_TRUE(e.Is<Binary>());
  EXPECT_EQ(BinaryOp::kOr, e.As<Binary>().op);
  const Expr& conj = *e.As<Binary>().lhs;
  EXPECT_EQ(BinaryOp::kAnd, conj.As<Binary>().op);
  const Expr& lt = *conj.As<Binary>().lhs;
  EXPECT_EQ(BinaryOp::kLt, lt.As<Binary>().op);
  const Expr& sub = *lt.As<Binary>().lhs;
  EXPECT_EQ(BinaryOp::kSub, sub.As<Binary>().op);
  // (1 - 2) - (3 * 4)
  EXPECT_EQ(BinaryOp::kSub, sub.As<Binary>().lhs->As<Binary>().op);
  EXPECT_EQ(BinaryOp::kMul, sub.As<Binary>().rhs->As<Binary>().op);
}

TEST(ParserTest, SwitchCases) {
  const Function fn = ParseSource(
      "int f(int x){ switch (x) { case -1: x = 1; break; case 2: break; default: x = 0; } "
      "return x; }");
  const Switch& sw = fn.body.stmts[0].As<Switch>();
  ASSERT_EQ(2u, sw.cases.size());
  EXPECT_EQ(-1, sw.cases[0].label);
  EXPECT_EQ(2, sw.cases[1].label);
  EXPECT_TRUE(sw.default_block.has_value());
  EXPECT_THROW(ParseSource("int f(int x){ switch (x) { case 1: break; case 1: break; } }"),
               ParseError);
}

TEST(ParserTest, ForLoopParts) {
  const Function fn = ParseSource("int f(){ int s = 0; for (int i = 0; i < 3; i = i + 1) s = s + i; return s; }");
  const For& loop = fn.body.stmts[1].As<For>();
  ASSERT_TRUE(loop.init.has_value());
  EXPECT_TRUE((*loop.init)->Is<Decl>());
  ASSERT_TRUE(loop.cond.has_value());
  ASSERT_TRUE(loop.update.has_value());
  EXPECT_EQ(1u, loop.body.stmts.size());
  // The loop variable is scoped to the loop.
  EXPECT_THROW(ParseSource("int f(){ for (int i = 0; i < 3; i = i + 1) {} return i; }"),
               ScopeError);
}

TEST(ParserTest, ArraySizesMustBePositive) {
  EXPECT_THROW(ParseSource("int f(){ int a[0]; return 0; }"), ParseError);
}

TEST(ParserTest, SelfCallArityIsChecked) {
  EXPECT_NO_THROW(ParseSource("int f(int n){ return f(n - 1); }"));
  EXPECT_THROW(ParseSource("int f(int n){ return f(); }"), ScopeError);
}

TEST(ParserTest, StatementSpansDoNotOverlap) {
  const Function fn = ParseSource("int f(){\n  int a = 1;\n  a = a + 1;\n  return a;\n}");
  ASSERT_EQ(3u, fn.body.stmts.size());
  for (std::size_t i = 0; i < fn.body.stmts.size(); ++i) {
    EXPECT_EQ(static_cast<int>(i) + 2, fn.body.stmts[i].span.start_line);
  }
}

}  // namespace
}  // namespace vulnlens::minic
