#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "poslp/log.hpp"

int main(int argc, char** argv) {
  // Tests that care about warnings install their own sink.
  poslp::set_warning_sink([](std::string_view) {});
  return doctest::Context(argc, argv).run();
}
