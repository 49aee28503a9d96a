#pragma once

#include "cubecert/cycle.hpp"
#include "cubecert/faces.hpp"
#include "cubecert/relations.hpp"

#include <map>
#include <memory>

namespace cubecert::dsl {

struct Pos {
    int line = 1;
    int col = 1;
    std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

struct SyntaxError : Error {
    SyntaxError(Pos p, const std::string& msg)
        : Error("syntax error at " + p.str() + ": " + msg), pos(p) {}
    Pos pos;
};

struct SemanticError : Error {
    SemanticError(Pos p, const std::string& msg)
        : Error("error at " + p.str() + ": " + msg), pos(p) {}
    Pos pos;
};

// Expression AST.
struct Expr {
    enum class Kind { Number, Symbol, Name, Call, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    Pos pos;
    long number = 0;           // Number
    Sym symbol = Sym::a;       // Symbol
    std::string name;          // Name / Call
    int exponent = 0;          // Pow
    std::vector<std::unique_ptr<Expr>> args;  // operands / call argument

    std::string str(int parent_prec = 0) const;
};

using ExprPtr = std::unique_ptr<Expr>;

struct Definition {
    std::string name;
    std::optional<Sym> formal;  // x or y
    ExprPtr body;
    Pos pos;
};

struct CycleDef {
    std::string name;
    std::vector<ExprPtr> coords;
    std::string provenance;
    Pos pos;
};

// One expected verdict for a face row.
struct ExpectedVerdict {
    enum class Kind { Degenerate, Subcycle, Point };
    Kind kind = Kind::Degenerate;
    bool at_infinity = false;        // Degenerate / Subcycle annotated @inf
    int hyperplane = 0;              // Degenerate
    std::string named;               // Subcycle by name
    std::vector<ExprPtr> tuple;      // Subcycle / Point by tuple
    Pos pos;
};

struct FaceRow {
    int index = 0;
    FaceEps eps = FaceEps::Zero;
    bool expect_empty = false;
    std::vector<ExpectedVerdict> verdicts;
    Pos pos;
};

struct CycleCheck {
    std::string cycle;
    std::vector<FaceRow> rows;
    Pos pos;
};

struct IdentityCheck {
    std::string label;
    ExprPtr lhs, rhs;
    Pos pos;
};

struct DecompCheck {
    std::string cycle;
    bool expect_decomposable = true;
    std::vector<std::pair<int, int>> tags;  // (codim, size)
    Pos pos;
};

struct SourceRef {
    std::string named;           // or
    std::vector<ExprPtr> tuple;  // inline
    Pos pos;
};

struct RelationCheck {
    std::string label;
    RelationRule rule = RelationRule::L31i;
    SourceRef first;
    std::optional<SourceRef> second;
    int slot = 0;  // explicit slot for l32i
    ExprPtr g, h;
    std::vector<SourceRef> targets;
    Pos pos;
};

struct HypothesesBlock {
    bool from_relation = true;
    std::vector<ExprPtr> explicit_polys;
    Pos pos;
};

// Parsed file: statements in order, plus the merged lookup tables.
struct SourceFile {
    std::vector<Definition> defs;
    std::vector<CycleDef> cycles;
    std::vector<CycleCheck> cycle_checks;
    std::vector<IdentityCheck> identity_checks;
    std::vector<DecompCheck> decomp_checks;
    std::vector<RelationCheck> relation_checks;
    std::optional<HypothesesBlock> hypotheses;
    std::vector<std::string> notes;

    std::string pretty() const;
};

SourceFile parse(const std::string& text);
// Parse several files into one namespace (duplicates are errors).
SourceFile parse_files(const std::vector<std::pair<std::string, std::string>>& named_texts);

// Elaborated artifacts ready for the runner.
struct Catalog {
    std::map<std::string, Cycle> cycles;
    std::vector<std::string> cycle_order;
    const SourceFile* source = nullptr;

    RatFunc eval(const Expr& e) const;
    Cycle eval_tuple(const std::vector<ExprPtr>& coords, const std::string& name,
                     const std::string& provenance, Pos pos) const;
    Cycle resolve(const SourceRef& ref) const;

    std::map<std::string, RatFunc> def_values;  // parameterless defs
    std::map<std::string, std::pair<Sym, RatFunc>> def_templates;
};

Catalog elaborate(const SourceFile& sf);

} // namespace cubecert::dsl
