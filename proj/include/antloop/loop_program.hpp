#pragma once

#include "antloop/matrix.hpp"
#include "antloop/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace antloop {

enum class LoopClass { Homogeneous, GeneralizedHomogeneous, Affine };

// while (F x > b) { x := A x + c }
struct LoopProgram {
    std::vector<std::string> var_names;
    QMatrix a;   // n x n update
    QVector c;   // affine shift, zero unless Affine
    QMatrix f;   // m x n guard rows
    QVector b;   // guard offsets, zero unless Affine
    LoopClass class_tag = LoopClass::Homogeneous;

    int dim() const { return a.rows(); }
    int conditions() const { return f.rows(); }
    void classify();  // sets class_tag from (b, c, m)
};

struct ParseError : std::runtime_error {
    ParseError(int line, int col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + msg),
          line(line),
          col(col) {}
    int line, col;
};

// Parses the loop DSL:
//   program := 'while' '(' cond (('&&'|',') cond)* ')' '{' (assign ';')* '}'
//   cond    := expr ('>'|'<') expr       (each conjunct normalized to form > const)
//   assign  := ident ':=' expr
//   expr    := linear combination with rational literals (1/2, 0.5, 2^(30))
// Sequential assignments are composed into one simultaneous update.
// Variables are ordered by first appearance in the guard, then the body.
LoopProgram parse_program(const std::string& source);

// Left-to-right substitution of sequential assignments into x := Ax + c.
std::pair<QMatrix, QVector> compose_sequential(
    const std::vector<std::string>& vars,
    const std::vector<std::pair<std::string, std::string>>& assignments);

// DSL rendering; parse(print(p)) == p up to variable ordering.
std::string print_program(const LoopProgram& p);

struct HomogenizeNote {
    bool was_affine = false;
    int original_dim = 0;
    std::string slack_name;  // the appended constant-1 coordinate
};

// Embeds an affine program into dimension n+1: A' = [A c; 0 1],
// F' = [F -b; 0 1]. Results must later be sliced at the last coordinate = 1.
std::pair<LoopProgram, HomogenizeNote> homogenize(const LoopProgram& p);

// JSON alternative: {vars, A, c, F, b} with rationals as "p/q" strings.
LoopProgram program_from_json(const std::string& text);
std::string program_to_json(const LoopProgram& p);

}  // namespace antloop
