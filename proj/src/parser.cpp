#include "typepycker/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <set>
#include <unordered_map>

namespace typepycker {
namespace {

enum class Tok {
  Int,
  Ident,
  KwDef,
  KwReturn,
  KwIf,
  KwThen,
  KwElse,
  KwTrue,
  KwFalse,
  KwExtern,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Equals,
  Plus,
  Arrow,
  Star,
  Newline,
  Indent,
  Dedent,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int64_t int_value = 0;
  Span span;
};

const std::unordered_map<std::string, Tok> kKeywords = {
    {"def", Tok::KwDef},     {"return", Tok::KwReturn}, {"if", Tok::KwIf},
    {"then", Tok::KwThen},   {"else", Tok::KwElse},     {"true", Tok::KwTrue},
    {"false", Tok::KwFalse}, {"extern", Tok::KwExtern},
};

class Lexer {
 public:
  Lexer(std::string_view source, std::string file)
      : src_(source), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::vector<int> indents{0};
    int line_no = 0;
    size_t pos = 0;
    while (pos <= src_.size()) {
      size_t eol = src_.find('\n', pos);
      bool last = eol == std::string_view::npos;
      std::string_view line = src_.substr(pos, last ? src_.size() - pos : eol - pos);
      line_no++;
      if (last && line.empty()) break;
      lex_line(line, line_no, indents, out);
      if (last) break;
      pos = eol + 1;
    }
    Span end = span(line_no + 1, 1, 0);
    while (indents.back() > 0) {
      indents.pop_back();
      out.push_back({Tok::Dedent, "", 0, end});
    }
    out.push_back({Tok::End, "", 0, end});
    return out;
  }

 private:
  Span span(int line, int col, int len) const { return Span{file_, line, col, len}; }

  void lex_line(std::string_view line, int line_no, std::vector<int>& indents,
                std::vector<Token>& out) {
    size_t i = 0;
    while (i < line.size() && line[i] == ' ') i++;
    if (i < line.size() && line[i] == '\t')
      throw CompileError("ParseError", span(line_no, (int)i + 1, 1), "tab indentation not supported");
    // Blank and comment-only lines do not affect indentation.
    if (i == line.size() || line[i] == '#') return;

    int indent = static_cast<int>(i);
    if (indent > indents.back()) {
      indents.push_back(indent);
      out.push_back({Tok::Indent, "", 0, span(line_no, 1, indent)});
    } else {
      while (indent < indents.back()) {
        indents.pop_back();
        out.push_back({Tok::Dedent, "", 0, span(line_no, 1, indent)});
      }
      if (indent != indents.back())
        throw CompileError("ParseError", span(line_no, 1, indent), "inconsistent indentation");
    }

    while (i < line.size()) {
      char c = line[i];
      int col = static_cast<int>(i) + 1;
      if (c == ' ') {
        i++;
        continue;
      }
      if (c == '\t')
        throw CompileError("ParseError", span(line_no, col, 1), "tab character in source");
      if (c == '#') break;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) j++;
        std::string text(line.substr(i, j - i));
        errno = 0;
        char* endp = nullptr;
        long long v = std::strtoll(text.c_str(), &endp, 10);
        if (errno != 0 || endp != text.c_str() + text.size())
          throw CompileError("ParseError", span(line_no, col, (int)text.size()),
                             "integer literal out of range");
        out.push_back({Tok::Int, text, v, span(line_no, col, (int)text.size())});
        i = j;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < line.size() &&
               (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
          j++;
        std::string text(line.substr(i, j - i));
        auto kw = kKeywords.find(text);
        Tok kind = kw == kKeywords.end() ? Tok::Ident : kw->second;
        out.push_back({kind, text, 0, span(line_no, col, (int)text.size())});
        i = j;
        continue;
      }
      switch (c) {
        case '(': out.push_back({Tok::LParen, "(", 0, span(line_no, col, 1)}); i++; continue;
        case ')': out.push_back({Tok::RParen, ")", 0, span(line_no, col, 1)}); i++; continue;
        case '[': out.push_back({Tok::LBracket, "[", 0, span(line_no, col, 1)}); i++; continue;
        case ']': out.push_back({Tok::RBracket, "]", 0, span(line_no, col, 1)}); i++; continue;
        case ',': out.push_back({Tok::Comma, ",", 0, span(line_no, col, 1)}); i++; continue;
        case ':': out.push_back({Tok::Colon, ":", 0, span(line_no, col, 1)}); i++; continue;
        case '=': out.push_back({Tok::Equals, "=", 0, span(line_no, col, 1)}); i++; continue;
        case '+': out.push_back({Tok::Plus, "+", 0, span(line_no, col, 1)}); i++; continue;
        case '*': out.push_back({Tok::Star, "*", 0, span(line_no, col, 1)}); i++; continue;
        case '-':
          if (i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", 0, span(line_no, col, 2)});
            i += 2;
            continue;
          }
          [[fallthrough]];
        default:
          throw CompileError("ParseError", span(line_no, col, 1),
                             std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({Tok::Newline, "", 0, span(line_no, (int)line.size() + 1, 0)});
  }

  std::string_view src_;
  std::string file_;
};

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse_program() {
    Program p;
    parse_stmt_list(p.stmts, &p, /*inside_def=*/false);
    expect(Tok::End, "statement");
    p.renumber();
    return p;
  }

  ExternDecl parse_extern_line() {
    Token kw = expect(Tok::KwExtern, "extern");
    Token name = expect(Tok::Ident, "extern name");
    expect(Tok::Colon, "':'");
    Type t = parse_type_tokens();
    return ExternDecl{name.text, std::move(t), kw.span};
  }

  bool at_end() const { return peek().kind == Tok::End; }
  void eat_newline() {
    if (peek().kind == Tok::Newline) next();
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool eat(Tok k) {
    if (peek().kind == k) {
      next();
      return true;
    }
    return false;
  }
  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw CompileError("ParseError", peek().span,
                         "expected " + what + ", got '" + describe(peek()) + "'");
    return next();
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::Newline: return "end of line";
      case Tok::Indent: return "indent";
      case Tok::Dedent: return "dedent";
      case Tok::End: return "end of input";
      case Tok::Int: return t.text;
      default: return t.text;
    }
  }

  void parse_stmt_list(std::vector<StmtPtr>& out, Program* prog, bool inside_def) {
    std::set<std::string> def_names;
    while (true) {
      Tok k = peek().kind;
      if (k == Tok::End || k == Tok::Dedent) break;
      if (k == Tok::Newline) {
        next();
        continue;
      }
      if (k == Tok::KwExtern) {
        if (inside_def)
          throw CompileError("ParseError", peek().span, "extern declaration inside a function body");
        ExternDecl d = parse_extern_line_inline();
        add_extern(*prog, std::move(d));
        expect(Tok::Newline, "end of line");
        continue;
      }
      StmtPtr s = parse_stmt(prog, inside_def);
      if (s->kind == StmtKind::Def) {
        if (!def_names.insert(s->name).second)
          throw CompileError("DuplicateDef", s->span,
                             "function '" + s->name + "' already defined in this scope");
      }
      out.push_back(std::move(s));
    }
  }

  ExternDecl parse_extern_line_inline() {
    Token kw = expect(Tok::KwExtern, "extern");
    Token name = expect(Tok::Ident, "extern name");
    expect(Tok::Colon, "':'");
    Type t = parse_type_tokens();
    return ExternDecl{name.text, std::move(t), kw.span};
  }

  static void add_extern(Program& prog, ExternDecl d) {
    if (const ExternDecl* prev = prog.find_extern(d.name)) {
      if (!(prev->type == d.type))
        throw CompileError("DuplicateExtern", d.span,
                           "extern '" + d.name + "' redeclared with a different type");
      return;
    }
    prog.prelude.push_back(std::move(d));
  }

  StmtPtr parse_stmt(Program* prog, bool inside_def) {
    const Token& t = peek();
    if (t.kind == Tok::KwDef) return parse_def(prog, inside_def);
    if (t.kind == Tok::KwReturn) {
      if (!inside_def)
        throw CompileError("ParseError", t.span, "return outside of a function body");
      Token kw = next();
      auto s = std::make_unique<Stmt>(StmtKind::Return, kw.span);
      s->exprs.push_back(parse_expr());
      expect(Tok::Newline, "end of line");
      return s;
    }
    // Annotated assignment: IDENT ':' type '=' expr
    if (t.kind == Tok::Ident && peek(1).kind == Tok::Colon) {
      Token name = next();
      next();  // ':'
      Type annot = parse_type_tokens();
      expect(Tok::Equals, "'='");
      auto s = std::make_unique<Stmt>(StmtKind::Assign, name.span);
      s->name = name.text;
      s->annot = std::move(annot);
      s->exprs.push_back(parse_expr());
      expect(Tok::Newline, "end of line");
      return s;
    }
    ExprPtr e = parse_expr();
    if (eat(Tok::Equals)) {
      ExprPtr value = parse_expr();
      expect(Tok::Newline, "end of line");
      if (e->kind == ExprKind::Var) {
        auto s = std::make_unique<Stmt>(StmtKind::Assign, e->span);
        s->name = e->name;
        s->exprs.push_back(std::move(value));
        return s;
      }
      if (e->kind == ExprKind::Index) {
        auto s = std::make_unique<Stmt>(StmtKind::IndexAssign, e->span);
        s->exprs.push_back(std::move(e->kids[0]));
        s->exprs.push_back(std::move(e->kids[1]));
        s->exprs.push_back(std::move(value));
        return s;
      }
      throw CompileError("ParseError", e->span, "assignment target must be a name or an index");
    }
    auto s = std::make_unique<Stmt>(StmtKind::ExprStmt, e->span);
    s->exprs.push_back(std::move(e));
    expect(Tok::Newline, "end of line");
    return s;
  }

  StmtPtr parse_def(Program* prog, bool inside_def) {
    (void)inside_def;
    Token kw = expect(Tok::KwDef, "def");
    Token name = expect(Tok::Ident, "function name");
    auto s = std::make_unique<Stmt>(StmtKind::Def, kw.span);
    s->name = name.text;
    expect(Tok::LParen, "'('");
    if (peek().kind != Tok::RParen) {
      while (true) {
        Token pname = expect(Tok::Ident, "parameter name");
        Param param;
        param.name = pname.text;
        param.span = pname.span;
        if (eat(Tok::Colon)) param.annot = parse_type_tokens();
        for (const Param& prev : s->params)
          if (prev.name == param.name)
            throw CompileError("ParseError", pname.span,
                               "duplicate parameter '" + param.name + "'");
        s->params.push_back(std::move(param));
        if (eat(Tok::Comma)) continue;
        break;
      }
    }
    expect(Tok::RParen, "')'");
    if (eat(Tok::Arrow)) s->annot = parse_type_tokens();
    expect(Tok::Colon, "':'");
    expect(Tok::Newline, "end of line");
    expect(Tok::Indent, "indented function body");
    parse_stmt_list(s->body, prog, /*inside_def=*/true);
    expect(Tok::Dedent, "dedent");
    if (s->body.empty())
      throw CompileError("ParseError", s->span, "empty function body");
    return s;
  }

  ExprPtr parse_expr() {
    if (peek().kind == Tok::KwIf) {
      Token kw = next();
      ExprPtr cond = parse_expr();
      expect(Tok::KwThen, "'then'");
      ExprPtr then_e = parse_expr();
      expect(Tok::KwElse, "'else'");
      ExprPtr else_e = parse_expr();
      Span sp = kw.span;
      sp.length = span_end(*else_e) - sp.column;
      std::vector<ExprPtr> kids;
      kids.push_back(std::move(cond));
      kids.push_back(std::move(then_e));
      kids.push_back(std::move(else_e));
      return make_expr(ExprKind::If, sp, std::move(kids));
    }
    return parse_add();
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_postfix();
    while (peek().kind == Tok::Plus) {
      next();
      ExprPtr rhs = parse_postfix();
      Span sp = e->span;
      sp.length = span_end(*rhs) - sp.column;
      std::vector<ExprPtr> kids;
      kids.push_back(std::move(e));
      kids.push_back(std::move(rhs));
      e = make_expr(ExprKind::Add, sp, std::move(kids));
    }
    return e;
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (true) {
      if (peek().kind == Tok::LParen) {
        next();
        std::vector<ExprPtr> kids;
        kids.push_back(std::move(e));
        if (peek().kind != Tok::RParen) {
          while (true) {
            kids.push_back(parse_expr());
            if (eat(Tok::Comma)) continue;
            break;
          }
        }
        Token close = expect(Tok::RParen, "')'");
        Span sp = kids[0]->span;
        sp.length = close.span.column + 1 - sp.column;
        e = make_expr(ExprKind::Call, sp, std::move(kids));
        continue;
      }
      if (peek().kind == Tok::LBracket) {
        next();
        ExprPtr idx = parse_expr();
        Token close = expect(Tok::RBracket, "']'");
        Span sp = e->span;
        sp.length = close.span.column + 1 - sp.column;
        std::vector<ExprPtr> kids;
        kids.push_back(std::move(e));
        kids.push_back(std::move(idx));
        e = make_expr(ExprKind::Index, sp, std::move(kids));
        continue;
      }
      break;
    }
    return e;
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        Token tok = next();
        return make_int(tok.int_value, tok.span);
      }
      case Tok::KwTrue: {
        Token tok = next();
        return make_bool(true, tok.span);
      }
      case Tok::KwFalse: {
        Token tok = next();
        return make_bool(false, tok.span);
      }
      case Tok::Ident: {
        Token tok = next();
        return make_var(tok.text, tok.span);
      }
      case Tok::LBracket: {
        Token open = next();
        std::vector<ExprPtr> elems;
        if (peek().kind != Tok::RBracket) {
          while (true) {
            elems.push_back(parse_expr());
            if (eat(Tok::Comma)) continue;
            break;
          }
        }
        Token close = expect(Tok::RBracket, "']'");
        Span sp = open.span;
        sp.length = close.span.column + 1 - sp.column;
        return make_expr(ExprKind::ArrayLit, sp, std::move(elems));
      }
      case Tok::LParen: {
        next();
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default:
        throw CompileError("ParseError", t.span,
                           "expected an expression, got '" + describe(t) + "'");
    }
  }

  // Type syntax on the token stream: * | Bool | Int | Array(T) |
  // Function([T, ...], T).
  Type parse_type_tokens() {
    const Token& t = peek();
    if (t.kind == Tok::Star) {
      next();
      return Type::unknown();
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "Bool") {
        next();
        return Type::boolean();
      }
      if (t.text == "Int") {
        next();
        return Type::integer();
      }
      if (t.text == "Array") {
        next();
        expect(Tok::LParen, "'('");
        Type elem = parse_type_tokens();
        expect(Tok::RParen, "')'");
        return Type::array(std::move(elem));
      }
      if (t.text == "Function") {
        next();
        expect(Tok::LParen, "'('");
        expect(Tok::LBracket, "'['");
        std::vector<Type> params;
        if (peek().kind != Tok::RBracket) {
          while (true) {
            params.push_back(parse_type_tokens());
            if (eat(Tok::Comma)) continue;
            break;
          }
        }
        expect(Tok::RBracket, "']'");
        expect(Tok::Comma, "','");
        Type ret = parse_type_tokens();
        expect(Tok::RParen, "')'");
        return Type::function(std::move(params), std::move(ret));
      }
    }
    throw CompileError("ParseError", t.span, "expected a type, got '" + describe(t) + "'");
  }

  static int span_end(const Expr& e) { return e.span.column + e.span.length; }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view source, const std::string& file) {
  Lexer lexer(source, file);
  Parser parser(lexer.run());
  return parser.parse_program();
}

std::vector<ExternDecl> parse_prelude(std::string_view text, const std::string& file) {
  std::vector<ExternDecl> out;
  Lexer lexer(text, file);
  Parser parser(lexer.run());
  while (!parser.at_end()) {
    out.push_back(parser.parse_extern_line());
    parser.eat_newline();
  }
  return out;
}

Program parse_with_prelude(std::string_view source, std::string_view prelude,
                           const std::string& file) {
  std::vector<ExternDecl> decls = parse_prelude(prelude);
  Program p = parse(source, file);
  // Prelude file entries come first; the source may repeat a declaration
  // verbatim but not change its type.
  std::vector<ExternDecl> merged;
  for (ExternDecl& d : decls) {
    if (const ExternDecl* in_src = p.find_extern(d.name)) {
      if (!(in_src->type == d.type))
        throw CompileError("DuplicateExtern", in_src->span,
                           "extern '" + d.name + "' conflicts with the prelude declaration");
    } else {
      merged.push_back(std::move(d));
    }
  }
  for (ExternDecl& d : p.prelude) merged.push_back(std::move(d));
  p.prelude = std::move(merged);
  return p;
}

}  // namespace typepycker
