#pragma once

#include <string>
#include <vector>

namespace symred::models {

struct Source {
  const char* id;
  const char* title;
  const char* text;
};

const std::vector<Source>& sources();

}  // namespace symred::models
