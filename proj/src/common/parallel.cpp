#include "vqa/common/parallel.hpp"

namespace vqa {

unsigned default_workers() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace vqa
