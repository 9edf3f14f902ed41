#include "pictex/pen.hpp"

namespace pictex {

Dimen long_leader() { return parse_dimen("24in"); }

Symbol Symbol::make(Box box, std::string_view markers, Point offset, Diagnostics* diag) {
  Symbol s;
  s.shift = orient_shifts(box.ext, markers, offset, diag);
  s.box = std::move(box);
  return s;
}

Symbol Symbol::default_dot() {
  const Dimen half = Dimen::from_sp(Dimen::kUnity / 2);
  Box box;
  box.ext = {1_pt, half, half};
  PlacedItem dot;
  dot.kind = ItemKind::dot;
  dot.ext = box.ext;
  dot.shape = Shape::disk();
  box.items.push_back(dot);
  return make(std::move(box));
}

DashPattern DashPattern::solid() {
  DashPattern p;
  p.entries = {long_leader(), Dimen{}};
  p.forward = {{true, long_leader()}};
  p.leader = long_leader();
  p.dashed = false;
  return p;
}

DashPattern DashPattern::from_entries(const std::vector<Dimen>& entries) {
  DashPattern p;
  p.dashed = true;
  Dimen total;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < Dimen{}) {
      throw Error(ErrorKind::invalid_argument, "dash pattern entries must not be negative");
    }
    p.entries.push_back(entries[i]);
    p.forward.push_back({i % 2 == 0, entries[i]});
    total += entries[i];
  }
  if (total > Dimen{}) {
    p.leader = total;
    return p;
  }
  p.entries = {Dimen{}, long_leader()};
  p.forward = {{false, long_leader()}};
  p.leader = long_leader();
  return p;
}

DashPattern DashPattern::dots(Dimen gap, Dimen spacing) {
  Dimen up = gap - spacing;
  if (up < Dimen{}) up = Dimen{};
  return from_entries({spacing, up});
}

DashPattern DashPattern::dashes(Dimen length) { return from_entries({length, length}); }

DashPattern DashPattern::dots_near(Dimen gap, Dimen span, Dimen spacing) {
  if (gap <= Dimen{}) throw Error(ErrorKind::invalid_argument, "setdotsnear: gap must be positive");
  Dimen b = span - Dimen::from_sp(3277);  // .05pt
  const Dimen d = b + Decimal::parse(".5") * gap;
  std::int64_t n = d.sp() / gap.sp();
  if (n < 1) n = 1;
  b = b.over(n);
  return dots(b, spacing);
}

DashPattern DashPattern::dashes_near(Dimen length, Dimen span) {
  if (length <= Dimen{}) {
    throw Error(ErrorKind::invalid_argument, "setdashesnear: length must be positive");
  }
  const Dimen d = span + Decimal::parse(".5") * length;
  std::int64_t n = d.sp() / length.sp();
  if (n % 2 == 0) ++n;
  return dashes(span.over(n));
}

std::vector<DashSpan> DashPattern::backward() const {
  return {forward.rbegin(), forward.rend()};
}

void PenState::reset_phase() {
  cursor = 0;
  downlength = next_value();
  distacross = Dimen{};
}

Dimen PenState::next_value() {
  const auto& list = pattern.entries;
  const Dimen v = list[cursor % list.size()];
  cursor = (cursor + 1) % list.size();
  return v;
}

void PenState::advance_dashing() {
  if (!pattern.dashed) return;
  downlength -= spacing;
  if (downlength > Dimen{}) return;
  distacross += downlength;
  uplength = next_value();
  distacross += uplength;
  downlength = next_value();
}

}  // namespace pictex
