#include <iostream>

int main() {
  std::cout << "nuspectral (placeholder)\n";
  return 0;
}
