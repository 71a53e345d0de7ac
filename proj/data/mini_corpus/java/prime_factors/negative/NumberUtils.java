package corpus.primes;

import java.util.ArrayList;
import java.util.List;

public class NumberUtils {

    public static boolean isPrime(int n) {
        if (n < 2) {
            return false;
        }
        for (int i = 2; i * i <= n; i++) {
            if (n % i == 0) {
                return false;
            }
        }
        return true;
    }

    public static List<Integer> sieve(int limit) {
        boolean[] composite = new boolean[limit + 1];
        List<Integer> primes = new ArrayList<>();
        for (int i = 2; i <= limit; i++) {
            if (!composite[i]) {
                primes.add(i);
                for (long j = (long) i * i; j <= limit; j += i) {
                    composite[(int) j] = true;
                }
            }
        }
        return primes;
    }

    public static int sumOfDivisors(int n) {
        int sum = 0;
        for (int i = 1; i <= n; i++) {
            if (n % i == 0) {
                sum += i;
            }
        }
        return sum;
    }

    public static List<Integer> divisors(int num) {
        List<Integer> result = new ArrayList<>();
        for (int i = 1; i <= Math.sqrt(num); i++) {
            if (num % i == 0) {
                result.add(i);
                if (i != num / i) {
                    result.add(num / i);
                }
            }
        }
        return result;
    }

    public static long factorial(int n) {
        long result = 1;
        for (int i = 2; i <= n; i++) {
            result *= i;
        }
        return result;
    }

    public static int digitSum(int n) {
        int sum = 0;
        while (n > 0) {
            sum += n % 10;
            n /= 10;
        }
        return sum;
    }

    public static boolean isPowerOfTwo(int n) {
        if (n <= 0) {
            return false;
        }
        while (n % 2 == 0) {
            n /= 2;
        }
        return n == 1;
    }

    public static int nextPrime(int n) {
        int candidate = n + 1;
        while (!isPrime(candidate)) {
            candidate++;
        }
        return candidate;
    }

    public static boolean isPerfect(int number) {
        int total = 1;
        for (int i = 2; i * i <= number; i++) {
            if (number % i == 0) {
                total += i;
                int other = number / i;
                if (other != i) {
                    total += other;
                }
            }
        }
        return number > 1 && total == number;
    }

    public static int countDigits(long value) {
        int digits = 0;
        do {
            value /= 10;
            digits++;
        } while (value != 0);
        return digits;
    }
}
