#include "mconn/minor_view.hpp"

#include <string>

#include "mconn/errors.hpp"

namespace mconn {

namespace {

GroundSet surviving_ground(const OraclePtr& base, Subset removed) {
  if (!base) throw Error("null base oracle");
  if (!removed.subset_of(base->full_set())) {
    throw OutOfRange("minor masks reference elements outside the base");
  }
  std::vector<std::string> labels;
  for (int e = 0; e < base->size(); ++e) {
    if (!removed.contains(e)) labels.push_back(base->ground().label(e));
  }
  return GroundSet(std::move(labels));
}

class MinorIncrementalRank final : public IncrementalRank {
 public:
  MinorIncrementalRank(std::unique_ptr<IncrementalRank> base_session,
                       Subset contracted, const std::vector<int>& to_base)
      : base_(std::move(base_session)), to_base_(to_base) {
    for (int e : contracted) base_->push(e);
    offset_ = base_->rank();
  }

  void push(int element) override {
    base_->push(to_base_[static_cast<std::size_t>(element)]);
  }
  void pop() override { base_->pop(); }
  int rank() const override { return base_->rank() - offset_; }

 private:
  std::unique_ptr<IncrementalRank> base_;
  const std::vector<int>& to_base_;
  int offset_;
};

}  // namespace

MinorView::MinorView(OraclePtr base, Subset deleted, Subset contracted)
    : RankOracle(surviving_ground(base, deleted | contracted)),
      base_(std::move(base)),
      deleted_(deleted),
      contracted_(contracted) {
  if (deleted_.intersects(contracted_)) {
    throw OverlappingSets("deleted and contracted sets intersect: " +
                          to_string(deleted_ & contracted_));
  }
  to_view_index_.assign(static_cast<std::size_t>(base_->size()), -1);
  const Subset removed = deleted_ | contracted_;
  for (int e = 0; e < base_->size(); ++e) {
    if (!removed.contains(e)) {
      to_view_index_[static_cast<std::size_t>(e)] =
          static_cast<int>(to_base_index_.size());
      to_base_index_.push_back(e);
    }
  }
  contracted_rank_ = base_->rank(contracted_);
}

int MinorView::base_element(int view_index) const {
  if (view_index < 0 || view_index >= size()) {
    throw OutOfRange("view index " + std::to_string(view_index) +
                     " outside minor of size " + std::to_string(size()));
  }
  return to_base_index_[static_cast<std::size_t>(view_index)];
}

int MinorView::view_element(int base_index) const {
  if (base_index < 0 || base_index >= base_->size() ||
      to_view_index_[static_cast<std::size_t>(base_index)] < 0) {
    throw OutOfRange("base element " + std::to_string(base_index) +
                     " does not survive in the minor");
  }
  return to_view_index_[static_cast<std::size_t>(base_index)];
}

Subset MinorView::to_base(Subset view_set) const {
  Subset out;
  for (int e : view_set) out |= Subset::single(base_element(e));
  return out;
}

Subset MinorView::to_view(Subset base_set) const {
  Subset out;
  for (int e : base_set) out |= Subset::single(view_element(e));
  return out;
}

int MinorView::rank_uncached(Subset x) const {
  return base_->rank(to_base(x) | contracted_) - contracted_rank_;
}

std::unique_ptr<IncrementalRank> MinorView::incremental_rank() const {
  return std::make_unique<MinorIncrementalRank>(base_->incremental_rank(),
                                                contracted_, to_base_index_);
}

OraclePtr MinorView::clone_fresh() const {
  return std::make_shared<MinorView>(base_->clone_fresh(), deleted_,
                                     contracted_);
}

std::shared_ptr<const MinorView> minor(const OraclePtr& m, Subset deleted,
                                       Subset contracted) {
  // Views of views simply nest; the returned view's index maps always refer
  // to m's ground set, whatever m is.
  return std::make_shared<MinorView>(m, deleted, contracted);
}

std::shared_ptr<const MinorView> remove_element(const OraclePtr& m, int e,
                                                MinorOp op) {
  const Subset single = Subset::single(e);
  return op == MinorOp::Delete ? minor(m, single, Subset())
                               : minor(m, Subset(), single);
}

}  // namespace mconn
