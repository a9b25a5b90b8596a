#include "acm/bufsim.hpp"
#include "acm/errors.hpp"

namespace acm {

LruCache::LruCache(std::size_t capacity_pages) : capacity_(capacity_pages) {
  if (capacity_ == 0) {
    throw InputError("cache capacity must be positive");
  }
  map_.reserve(capacity_);
}

bool LruCache::access(PageId page) {
  auto it = map_.find(page);
  if (it != map_.end()) {
    recency_.splice(recency_.begin(), recency_, it->second);
    return true;
  }
  if (map_.size() == capacity_) {
    map_.erase(recency_.back());
    recency_.pop_back();
  }
  recency_.push_front(page);
  map_.emplace(page, recency_.begin());
  return false;
}

bool LruCache::contains(PageId page) const { return map_.contains(page); }

void LruCache::clear() {
  recency_.clear();
  map_.clear();
}

std::vector<PageId> LruCache::resident() const { return {recency_.begin(), recency_.end()}; }

}  // namespace acm
