#include "fracdiff/cli.hpp"

int main(int argc, char** argv) {
  return fracdiff::dispatch({argv + 1, argv + argc});
}
