#pragma once

#include <iosfwd>
#include <string>

#include "nvk/asymptotic.hpp"
#include "nvk/morse.hpp"
#include "nvk/quantum.hpp"
#include "nvk/tensor.hpp"

namespace nvk {

// Line-oriented UTF-8 complex format, canonical ordering so parse/serialize
// round-trips are byte-identical:
//
//   novikov-complex v1
//   group <generator>
//   grading <label> succ <label>
//   generator <grading> <name> <level>
//   parity <name> <0|1>              (optional)
//   diff <target> <source> <element>
//   end
//
// Gradings sorted by label; generators in basis order grouped by grading in
// sorted-grading order; diff entries sorted by (target, source); parity lines
// sorted by generator name, emitted only when any parity is set.
std::string serializeComplex(const FilteredComplex& c,
                             const std::vector<int>* parity = nullptr);
struct ParsedComplex {
    FilteredComplex complex;
    std::vector<int> parity;  // empty when no parity lines were present
};
ParsedComplex parseComplex(const std::string& text);
ParsedComplex loadComplexFile(const std::string& path);
void saveComplexFile(const FilteredComplex& c, const std::string& path,
                     const std::vector<int>* parity = nullptr);

// Quantum-correction format: the complex sections plus
//   base <target> <source> <rational>
//   gap <grading> <mu>
std::string serializeQuantum(const QuantumCorrection& q);
QuantumCorrection parseQuantum(const std::string& text);
QuantumCorrection loadQuantumFile(const std::string& path);

// Family CSV: header "# asymptotic-family v1 n=<n> T=<T>", then rows
// s,b1_00,...,b1_nn,b2_00,...,b2_nn (row-major).
std::string serializeFamily(const BlockOperatorFamily& fam);
BlockOperatorFamily parseFamily(const std::string& text);
BlockOperatorFamily loadFamilyFile(const std::string& path);

// Circle samples CSV: rows "position,value" with exact rational or decimal
// literals; positions must be the uniform grid i/N in order (the positions
// column is validated, values are kept exactly).
SampledCircleFunction parseCircleCsv(const std::string& text);
SampledCircleFunction loadCircleCsv(const std::string& path);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& content);

}  // namespace nvk
