"""Core tensor operations for the policy/IDM models, plus a gradient checker.

All ops are thin, contract-enforcing wrappers over torch CPU kernels; autograd
supplies the analytic gradients and ``grad_check`` verifies them against
central finite differences in double precision. Models are built from exactly
these primitives so the whole network is covered by the same verification
path.

Type mapping: the "tensor" of this package is ``torch.Tensor`` (shape, values,
``requires_grad``, ``grad``); named parameters come from ``nn.Module``, which
guarantees unique dotted names within a model.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import torch

from .errors import ConfigError, MaskError, NumericsError, ShapeError

Tensor = torch.Tensor


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """Matrix product with an explicit inner-dimension check."""
    if a.ndim < 2 or b.ndim < 2:
        raise ShapeError(f"matmul needs >=2-d operands, got {tuple(a.shape)} @ {tuple(b.shape)}")
    if a.shape[-1] != b.shape[-2]:
        raise ShapeError(
            f"matmul inner dimensions disagree: {tuple(a.shape)} @ {tuple(b.shape)}"
        )
    return a @ b


def rmsnorm(x: Tensor, gain: Tensor, eps: float = 1e-6) -> Tensor:
    """Root-mean-square normalization over the last axis, scaled by `gain`.

    Internally computed in float64 regardless of input dtype (this op is
    precision-sensitive); the result is cast back to the input dtype.
    """
    if eps <= 0:
        raise ConfigError(f"rmsnorm eps must be > 0, got {eps}")
    if gain.shape[-1] != x.shape[-1]:
        raise ShapeError(f"rmsnorm gain dim {gain.shape[-1]} != feature dim {x.shape[-1]}")
    x64 = x.double()
    ms = x64.pow(2).mean(dim=-1, keepdim=True)
    out = x64 * torch.rsqrt(ms + eps) * gain.double()
    return out.to(x.dtype)


def masked_softmax(scores: Tensor, mask: Tensor) -> Tensor:
    """Softmax over the last axis with boolean visibility `mask`.

    Masked entries are exactly zero in the output; each row of the output sums
    to one. A row with no visible entries is a hard error, never a silent
    uniform fallback.
    """
    if mask.dtype != torch.bool:
        raise ShapeError(f"mask must be boolean, got {mask.dtype}")
    mask = mask.expand(scores.shape) if mask.shape != scores.shape else mask
    if not bool(mask.any(dim=-1).all()):
        raise MaskError("masked_softmax: at least one query row has no visible key")
    filled = scores.masked_fill(~mask, float("-inf"))
    return torch.softmax(filled, dim=-1)


def rope_apply(
    x: Tensor,
    position_ids: Tensor,
    base: float = 10000.0,
    pos_dim: int = -2,
) -> Tensor:
    """Rotary position embedding over consecutive coordinate pairs.

    `x` has head dimension last; `position_ids` (1-d, non-negative integers)
    indexes the axis `pos_dim`. Angles are computed in float64 and applied in
    the input dtype.
    """
    d = x.shape[-1]
    if d % 2 != 0:
        raise ConfigError(f"rope_apply needs an even head dim, got {d}")
    if position_ids.ndim != 1:
        raise ShapeError("position_ids must be 1-d")
    if x.shape[pos_dim] != position_ids.shape[0]:
        raise ShapeError(
            f"position axis {x.shape[pos_dim]} != len(position_ids) {position_ids.shape[0]}"
        )
    if bool((position_ids < 0).any()):
        raise ConfigError("position ids must be non-negative")

    freqs = base ** (-torch.arange(0, d, 2, dtype=torch.float64) / d)
    angles = position_ids.to(torch.float64)[:, None] * freqs[None, :]  # (P, d/2)
    cos = torch.cos(angles).to(x.dtype)
    sin = torch.sin(angles).to(x.dtype)

    # Broadcast cos/sin so the position axis lands on pos_dim of x.
    pos_dim = pos_dim % x.ndim
    shape = [1] * (x.ndim - 1) + [d // 2]
    shape[pos_dim] = x.shape[pos_dim]
    cos = cos.reshape(shape)
    sin = sin.reshape(shape)

    x_even = x[..., 0::2]
    x_odd = x[..., 1::2]
    out = torch.empty_like(x)
    out[..., 0::2] = x_even * cos - x_odd * sin
    out[..., 1::2] = x_even * sin + x_odd * cos
    return out


def cross_entropy(logits: Tensor, targets: Tensor, weights: Tensor | None = None) -> Tensor:
    """Weighted mean negative log-softmax of the target entries.

    Rows with weight zero contribute nothing to the loss or its gradient.
    Returns 0 when all weights are zero.
    """
    if logits.ndim != 2:
        raise ShapeError(f"logits must be (n, vocab), got {tuple(logits.shape)}")
    n, vocab = logits.shape
    if targets.shape != (n,):
        raise ShapeError(f"targets shape {tuple(targets.shape)} != ({n},)")
    if bool((targets < 0).any()) or bool((targets >= vocab).any()):
        raise IndexError(f"target id out of range [0, {vocab})")
    if weights is None:
        weights = torch.ones(n, dtype=logits.dtype)
    if bool((weights < 0).any()):
        raise ConfigError("cross_entropy weights must be >= 0")
    logp = torch.log_softmax(logits, dim=-1)
    nll = -logp.gather(1, targets[:, None]).squeeze(1)
    # Multiply before reducing so zero-weight rows are cut out of the graph.
    total = (nll * weights.to(nll.dtype)).sum()
    denom = weights.sum()
    if float(denom) == 0.0:
        return logits.sum() * 0.0
    return total / denom


def gelu(x: Tensor) -> Tensor:
    return torch.nn.functional.gelu(x)


def check_finite(x: Tensor, where: str) -> Tensor:
    """Raise if `x` contains NaN/Inf; used after every model-forward stage."""
    if not bool(torch.isfinite(x).all()):
        raise NumericsError(f"non-finite values in {where}")
    return x


def trunc_normal_(t: Tensor, std: float = 0.02, generator: torch.Generator | None = None) -> Tensor:
    """In-place truncated normal init (+-2 std), the default for all weights."""
    with torch.no_grad():
        t.normal_(0.0, std, generator=generator)
        t.clamp_(-2 * std, 2 * std)
    return t


def grad_check(
    fn: Callable[[], Tensor],
    params: Iterable[tuple[str, Tensor]],
    h: float = 1e-5,
) -> dict[str, float]:
    """Compare autograd gradients of scalar `fn()` with central differences.

    Every element of every parameter is perturbed by +-h; relative error is
    |analytic - numeric| / max(|analytic|, |numeric|, 1e-4), and the per-
    parameter maximum is reported. Parameters must be float64.
    """
    params = list(params)
    for name, p in params:
        if p.dtype != torch.float64:
            raise ConfigError(f"grad_check requires float64 parameters ({name} is {p.dtype})")

    for _, p in params:
        p.grad = None
    loss = fn()
    if loss.ndim != 0:
        raise ShapeError("grad_check target must be a scalar")
    loss.backward()

    report: dict[str, float] = {}
    for name, p in params:
        analytic = (
            p.grad.detach().clone() if p.grad is not None else torch.zeros_like(p)
        )
        numeric = torch.zeros_like(p)
        flat = p.data.view(-1)
        nflat = numeric.view(-1)
        for idx in range(flat.numel()):
            orig = flat[idx].item()
            flat[idx] = orig + h
            f_plus = float(fn())
            flat[idx] = orig - h
            f_minus = float(fn())
            flat[idx] = orig
            nflat[idx] = (f_plus - f_minus) / (2.0 * h)
        if not math.isfinite(float(numeric.abs().max().item()) if numeric.numel() else 0.0):
            raise NumericsError(f"non-finite finite-difference gradient for {name}")
        denom = torch.maximum(
            torch.maximum(analytic.abs(), numeric.abs()),
            torch.full_like(analytic, 1e-4),
        )
        rel = ((analytic - numeric).abs() / denom).max().item() if p.numel() else 0.0
        report[name] = float(rel)
    return report
