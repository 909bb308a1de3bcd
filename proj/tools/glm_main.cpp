#include <iostream>

int main() {
  std::cout << "glm: placeholder\n";
  return 0;
}
