#include "hsd/runner.hpp"

#include <map>
#include <stdexcept>

namespace hsd {
namespace {

const std::map<std::string, std::string>& demos() {
  static const std::map<std::string, std::string> table{
      {"qubit-pair", R"(hsdcert-model 1
# Two qubits and their Kronecker composite; every certificate should pass.
system qubitA
  algebra complex 2
  tests sampled 12 seed 11
  state uniform
end

system qubitB
  algebra complex 2
  tests sampled 12 seed 12
  state [0.9, 0.1, 0.21213203435596426, 0.14142135623730950]
end

composite qubits
  parts qubitA qubitB
  carrier candidate
  state maximally-entangled
end
)"},
      {"rebit-pair", R"(hsdcert-model 1
# Real quantum theory: the symmetric Kronecker carrier has dimension 10, not 3 x 3.
system rebitA
  algebra real 2
  tests sampled 12 seed 21
  state uniform
end

system rebitB
  algebra real 2
  tests sampled 12 seed 22
end

composite rebits
  parts rebitA rebitB
  carrier candidate
  state maximally-entangled
  expect local-tomography fail
end
)"},
      {"quabit-pair", R"(hsdcert-model 1
# Quaternionic quantum theory: the hermitian part of the quaternionic Kronecker
# product has dimension 28 < 6 x 6 and is not a composite.
system quabitA
  algebra quaternion 2
  tests sampled 12 seed 31
end

system quabitB
  algebra quaternion 2
  tests sampled 12 seed 32
end

composite quabits
  parts quabitA quabitB
  carrier candidate
  expect local-tomography fail
  expect product-tests fail
  expect product-states fail
  expect trace-factorization fail
  expect tensor-Lmap fail
  expect hanche-olsen fail
end
)"},
      {"spin-vs-qubit", R"(hsdcert-model 1
# The spin factor V3 is a qubit in disguise: (t, x) -> t I + x . sigma.
system spin3
  algebra spin 3
  tests sampled 12 seed 41
  state uniform
end

system qubit
  algebra complex 2
  tests sampled 12 seed 42
  state uniform
end

system spin5
  algebra spin 5
  tests sampled 12 seed 43
end
)"},
  };
  return table;
}

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : demos()) names.push_back(name);
  return names;
}

std::string demo_model(const std::string& name) {
  const auto it = demos().find(name);
  if (it == demos().end()) throw std::invalid_argument("unknown demo '" + name + "'");
  return it->second;
}

}  // namespace hsd
