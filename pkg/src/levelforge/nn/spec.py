"""Network shape specifications for the FC and CNN variational autoencoders.

Every dimension is parameterized so desk-scale tests can shrink widths and
grids without changing code paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InvalidSpec

VARIANT_FC = "FC"
VARIANT_CNN = "CNN"


@dataclass(frozen=True)
class NetworkSpec:
    variant: str
    grid: tuple[int, int] = (16, 16)
    dim: int = 256
    latent_dim: int = 128
    fc_widths: tuple[int, ...] = (1024, 512, 256, 128)
    conv_filters: tuple[int, ...] = (256, 256, 128)
    conv_strides: tuple[int, ...] = (2, 2, 1)
    kernel: int = 3
    dense_widths: tuple[int, ...] = (1024,)
    output_activation: str = "linear"  # "softmax" for one-hot / cross-entropy models

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(self.grid))
        object.__setattr__(self, "fc_widths", tuple(self.fc_widths))
        object.__setattr__(self, "conv_filters", tuple(self.conv_filters))
        object.__setattr__(self, "conv_strides", tuple(self.conv_strides))
        object.__setattr__(self, "dense_widths", tuple(self.dense_widths))
        self.validate()

    def validate(self):
        if self.variant not in (VARIANT_FC, VARIANT_CNN):
            raise InvalidSpec(f"unknown variant {self.variant!r}")
        if self.dim < 1 or self.latent_dim < 1:
            raise InvalidSpec("dim and latent_dim must be positive")
        if len(self.grid) != 2 or min(self.grid) < 1:
            raise InvalidSpec(f"bad grid {self.grid}")
        if self.output_activation not in ("linear", "softmax"):
            raise InvalidSpec(f"bad output_activation {self.output_activation!r}")
        if self.variant == VARIANT_FC:
            if not self.fc_widths or any(w < 1 for w in self.fc_widths):
                raise InvalidSpec("fc_widths must be non-empty positive ints")
        else:
            if len(self.conv_filters) != len(self.conv_strides) or not self.conv_filters:
                raise InvalidSpec("conv_filters and conv_strides must align and be non-empty")
            if not self.dense_widths:
                raise InvalidSpec("CNN spec needs at least one post-flatten dense width")
            for h in self.conv_shape_chain():
                if min(h) < 1:
                    raise InvalidSpec(f"conv chain collapses below 1x1: {self.conv_shape_chain()}")

    @property
    def input_units(self) -> int:
        return self.grid[0] * self.grid[1] * self.dim

    def conv_shape_chain(self) -> list[tuple[int, int]]:
        """Spatial shapes (h, w) after each encoder conv, padding 1."""
        shapes = [self.grid]
        h, w = self.grid
        for s in self.conv_strides:
            h = (h + 2 - self.kernel) // s + 1
            w = (w + 2 - self.kernel) // s + 1
            shapes.append((h, w))
        return shapes

    @property
    def flatten_units(self) -> int:
        h, w = self.conv_shape_chain()[-1]
        return h * w * self.conv_filters[-1]

    def deconv_output_paddings(self) -> list[int]:
        """Output paddings so each transposed conv reinflates its mirror conv."""
        chain = self.conv_shape_chain()
        pads = []
        for i, s in enumerate(self.conv_strides):
            target_h = chain[i][0]
            base = (chain[i + 1][0] - 1) * s - 2 + self.kernel
            op = target_h - base
            if not 0 <= op < max(s, 1):
                raise InvalidSpec(f"cannot invert conv stage {i}: output padding {op}")
            pads.append(op)
        return pads

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "grid": list(self.grid),
            "dim": self.dim,
            "latent_dim": self.latent_dim,
            "fc_widths": list(self.fc_widths),
            "conv_filters": list(self.conv_filters),
            "conv_strides": list(self.conv_strides),
            "kernel": self.kernel,
            "dense_widths": list(self.dense_widths),
            "output_activation": self.output_activation,
        }

    @classmethod
    def from_json(cls, data: dict) -> "NetworkSpec":
        try:
            return cls(
                variant=data["variant"],
                grid=tuple(data["grid"]),
                dim=data["dim"],
                latent_dim=data["latent_dim"],
                fc_widths=tuple(data["fc_widths"]),
                conv_filters=tuple(data["conv_filters"]),
                conv_strides=tuple(data["conv_strides"]),
                kernel=data["kernel"],
                dense_widths=tuple(data["dense_widths"]),
                output_activation=data.get("output_activation", "linear"),
            )
        except KeyError as exc:
            raise InvalidSpec(f"spec JSON missing {exc}") from None


def default_fc_spec(dim: int, output_activation: str = "linear") -> NetworkSpec:
    return NetworkSpec(variant=VARIANT_FC, dim=dim, latent_dim=128,
                       fc_widths=(1024, 512, 256, 128), output_activation=output_activation)


def default_cnn_spec(dim: int, output_activation: str = "linear") -> NetworkSpec:
    return NetworkSpec(variant=VARIANT_CNN, dim=dim, latent_dim=512,
                       conv_filters=(256, 256, 128), conv_strides=(2, 2, 1),
                       dense_widths=(1024,), output_activation=output_activation)
