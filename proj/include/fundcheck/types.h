#pragma once

#include <string>

namespace fundcheck {

enum class Verdict { kCompatible, kIncompatible, kUndetermined };

// Configuration class of a triple or quadruple of views. kMixed is used for
// n > 4 when quadruples fall into different classes, kAmbiguous when an
// epipole coincidence sits inside the tolerance band.
enum class CaseTag {
  kCase1,
  kCase2,
  kCase3,
  kCase4,
  kTripleNonCollinear,
  kTripleCollinear,
  kInconsistent,
  kMixed,
  kAmbiguous,
};

enum class Uniqueness { kUnique, kFamily };

std::string ToString(Verdict v);
std::string ToString(CaseTag c);
std::string ToString(Uniqueness u);

}  // namespace fundcheck
