#include "stripnls/grid.hpp"

#include <stdexcept>

namespace stripnls {

void Grid::validate() const {
  if (Lx <= 0.0) throw std::invalid_argument("Grid: L_x must be positive");
  if (Nx < 4 || Nx % 2 != 0) throw std::invalid_argument("Grid: N_x must be even and >= 4");
  if (Ny < 1) throw std::invalid_argument("Grid: N_y must be >= 1");
}

}  // namespace stripnls
