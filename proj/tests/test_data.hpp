#pragma once

#include "polobstruct/matrix_io.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

inline polobstruct::Json load_test_data(const std::string& name) {
  const std::string path = std::string(POLOBSTRUCT_TEST_DATA) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing test data " + path);
  return polobstruct::Json::parse(in);
}
