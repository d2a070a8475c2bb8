#pragma once

#include <vector>

// Fixed precedence corpus: (source, X, P, expected). Expected values are
// exactly representable results of exact IEEE operations, so equality is
// checked bitwise.
struct ParserCase {
  const char* source;
  double x;
  double p;
  double expected;
};

inline const std::vector<ParserCase>& parser_corpus() {
  static const std::vector<ParserCase> cases = {
      {"2+3*4", 0, 0, 14.0},
      {"2*3+4", 0, 0, 10.0},
      {"2-3-4", 0, 0, -5.0},
      {"12/2/3", 0, 0, 2.0},
      {"2^3^2", 0, 0, 512.0},
      {"-2^2", 0, 0, -4.0},
      {"(-2)^2", 0, 0, 4.0},
      {"2^-2", 0, 0, 0.25},
      {"-2*3", 0, 0, -6.0},
      {"2--3", 0, 0, 5.0},
      {"2*-3", 0, 0, -6.0},
      {"2+3*4^2", 0, 0, 50.0},
      {"(2+3)*4", 0, 0, 20.0},
      {"2^(1+1)", 0, 0, 4.0},
      {"abs(0-3)+1", 0, 0, 4.0},
      {"sqrt(16)", 0, 0, 4.0},
      {"sin(0)", 0, 0, 0.0},
      {"cos(0)", 0, 0, 1.0},
      {"exp(0)", 0, 0, 1.0},
      {"ln(1)", 0, 0, 0.0},
      {"tanh(0)+arctan(0)+arcsinh(0)", 0, 0, 0.0},
      {"1e2 + 1e1", 0, 0, 110.0},
      {"0.5*8", 0, 0, 4.0},
      {".25*4", 0, 0, 1.0},
      {"X*X - P", 3, 2, 7.0},
      {"X^4", 2, 0, 16.0},
      {"-X^2", 3, 0, -9.0},
      {"X - -P", 1, 2, 3.0},
  };
  return cases;
}
