"""Base datamodels that other inherits from."""

from typing import Annotated, Any, Callable, ClassVar, TypeAlias

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict
from pydantic_core import core_schema


class RWModel(BaseModel):  # pylint: disable=too-few-public-methods
    """Base model for read/ write operations"""

    model_config = ConfigDict(
        populate_by_name=True,
        use_enum_values=True,
    )


class FrozenModel(BaseModel):  # pylint: disable=too-few-public-methods
    """Immutable value holding numpy arrays."""

    model_config = ConfigDict(
        frozen=True,
        arbitrary_types_allowed=True,
        populate_by_name=True,
    )


class _NdArrayPydanticAnnotation:
    # Based on https://docs.pydantic.dev/latest/usage/types/custom/#handling-third-party-types.

    dtype: ClassVar[type] = np.float64
    ndim: ClassVar[int] = 1

    @classmethod
    def __get_pydantic_core_schema__(
        cls,
        _source_type: Any,
        _handler: Callable[[Any], core_schema.CoreSchema],
    ) -> core_schema.CoreSchema:
        def validate_array(input_value: Any) -> np.ndarray:
            try:
                array = np.array(input_value, dtype=cls.dtype)
            except (TypeError, ValueError) as err:
                raise ValueError(f"Could not read values as {cls.dtype.__name__}") from err
            if array.ndim != cls.ndim:
                raise ValueError(
                    f"Expected a {cls.ndim}-dimensional array, got {array.ndim} dimensions"
                )
            array.flags.writeable = False
            return array

        return core_schema.no_info_plain_validator_function(
            validate_array,
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda array: array.tolist()
            ),
        )


class _ComplexArrayAnnotation(_NdArrayPydanticAnnotation):
    dtype = np.complex128


class _GridArrayAnnotation(_NdArrayPydanticAnnotation):
    ndim = 2


RealArray: TypeAlias = Annotated[npt.NDArray[np.float64], _NdArrayPydanticAnnotation]
ComplexArray: TypeAlias = Annotated[
    npt.NDArray[np.complex128], _ComplexArrayAnnotation
]
RealGrid: TypeAlias = Annotated[npt.NDArray[np.float64], _GridArrayAnnotation]

Point2D: TypeAlias = tuple[float, float]
